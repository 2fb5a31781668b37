// Copyright 2026 The ddlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DDLAB_SEQUENCES_H
#define DDLAB_SEQUENCES_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/linalg.h"

namespace ddlab {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli parse_pauli(std::string_view s);

/// A Pauli pulse with a global phase i^phase (phase in 0..3). The phase is
/// bookkeeping only; simulation uses the bare Pauli.
struct PulseLabel {
    Pauli pauli = Pauli::I;
    std::uint8_t phase = 0;

    friend bool operator==(const PulseLabel &, const PulseLabel &) = default;
    /// Operator product `*this · rhs` with the phase tracked.
    PulseLabel operator*(const PulseLabel &rhs) const;
    CMatrix matrix() const;  // i^phase · σ
};

enum class SequenceFamily { FREE, XY4, XI, YI, ZI, GA8A, GA16A, GA32A };

std::string_view family_name(SequenceFamily f);
SequenceFamily parse_family(std::string_view s);

/// Labels emitted per repetition.
int labels_per_repetition(SequenceFamily f);
/// Smallest label count whose ordered product is the identity as a ray
/// (XI/YI/ZI need two repetitions).
int identity_period(SequenceFamily f);

struct SequenceDef {
    SequenceFamily family = SequenceFamily::FREE;
    int repetitions = 1;
    Pauli p1 = Pauli::X;  // GA families only
    Pauli p2 = Pauli::Z;

    friend bool operator==(const SequenceDef &, const SequenceDef &) = default;
    void validate() const;
};

/// Circuit-ordered label list (leftmost acts first).
///
///   FREE  [I]                    XY4   [X,Y,X,Y]
///   XI    [X,I]  (YI, ZI alike)  GA8A  [I,P1,P2,P1,I,P1,P2,P1]
///   GA16A GA8A with its leading I replaced by P3, twice; P3 ∉ {P1,P2}
///   GA32A GA4[GA8A]: blocks  X·GA8A, Y·GA8A, X·GA8A, Y·GA8A where the outer
///         pulse is multiplied into the block's leading (identity) slot
std::vector<PulseLabel> build_sequence(const SequenceDef &def);

/// Ordered operator product of the labels (later pulses on the left).
PulseLabel label_product(const std::vector<PulseLabel> &labels);

struct DeviceTimingProfile {
    std::string name;
    double pulse_width_ns = 80;
    double buffer_ns = 10;
    double identity_slot_ns = 90;
    int shots_per_experiment = 8192;

    friend bool operator==(const DeviceTimingProfile &, const DeviceTimingProfile &) = default;
    void validate() const;
    static DeviceTimingProfile make(std::string name, double pulse_width_ns, double buffer_ns, int shots);
};

/// IBMQX5 (80+10 ns, 8192 shots), Acorn (40+10 ns, 1000 shots),
/// IBMQX4 (50+10 ns, 8192 shots).
DeviceTimingProfile timing_profile(std::string_view name);
std::vector<std::string> timing_profile_names();

enum class SlotKind { PULSE, FREE };

struct ScheduleSlot {
    SlotKind kind = SlotKind::FREE;
    PulseLabel label;  // meaningful for PULSE slots
    double duration_ns = 0;
    double start_ns = 0;
    int label_index = 0;  // which sequence label produced the slot
};

struct PulseSchedule {
    std::vector<ScheduleSlot> slots;
    double total_ns = 0;
    int tau_multiplier = 1;
    int label_count = 0;
    DeviceTimingProfile profile;

    /// Slots up to and including those produced by the first `n_labels`
    /// labels.
    std::size_t slot_count_for_labels(int n_labels) const;
};

/// Each label occupies one identity slot; I labels become FREE slots. For
/// tau_multiplier k > 1, k−1 FREE identity slots follow every label, so
/// pulse-to-pulse spacing is k identity slots.
PulseSchedule compile_schedule(const std::vector<PulseLabel> &labels, const DeviceTimingProfile &profile,
                               int tau_multiplier = 1);

/// Throws InternalError if slots are not contiguous or total_ns is off.
void check_schedule(const PulseSchedule &s);

}  // namespace ddlab

#endif
