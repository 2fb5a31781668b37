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

#include "ddlab/sequences.h"

#include <array>
#include <cmath>

#include "ddlab/error.h"
#include "ddlab/quantum.h"

namespace ddlab {

namespace {

bool is_ga(SequenceFamily f) {
    return f == SequenceFamily::GA8A || f == SequenceFamily::GA16A || f == SequenceFamily::GA32A;
}

Pauli remaining_pauli(Pauli a, Pauli b) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        if (p != a && p != b) {
            return p;
        }
    }
    throw InvalidInput("no remaining Pauli");
}

std::vector<PulseLabel> ga8a_block(Pauli p1, Pauli p2, PulseLabel lead) {
    PulseLabel a{p1, 0};
    PulseLabel b{p2, 0};
    return {lead, a, b, a, PulseLabel{}, a, b, a};
}

}  // namespace

char pauli_char(Pauli p) {
    static constexpr std::array<char, 4> kChars{'I', 'X', 'Y', 'Z'};
    return kChars[static_cast<std::size_t>(p)];
}

Pauli parse_pauli(std::string_view s) {
    if (s == "I") return Pauli::I;
    if (s == "X") return Pauli::X;
    if (s == "Y") return Pauli::Y;
    if (s == "Z") return Pauli::Z;
    throw InvalidInput("unknown Pauli '" + std::string(s) + "'");
}

PulseLabel PulseLabel::operator*(const PulseLabel &rhs) const {
    int a = static_cast<int>(pauli);
    int b = static_cast<int>(rhs.pauli);
    int phase_sum = phase + rhs.phase;
    Pauli out = Pauli::I;
    if (a == 0) {
        out = rhs.pauli;
    } else if (b == 0) {
        out = pauli;
    } else if (a == b) {
        out = Pauli::I;
    } else {
        int c = 6 - a - b;
        out = static_cast<Pauli>(c);
        // σ_a σ_b = +iσ_c for cyclic (a,b,c), −iσ_c otherwise.
        bool cyclic = (b - a + 3) % 3 == 1;
        phase_sum += cyclic ? 1 : 3;
    }
    return PulseLabel{out, static_cast<std::uint8_t>(phase_sum % 4)};
}

CMatrix PulseLabel::matrix() const {
    static const std::array<cplx, 4> kPhases{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    return kPhases[phase % 4] * ddlab::pauli(static_cast<int>(pauli));
}

std::string_view family_name(SequenceFamily f) {
    switch (f) {
        case SequenceFamily::FREE:
            return "FREE";
        case SequenceFamily::XY4:
            return "XY4";
        case SequenceFamily::XI:
            return "XI";
        case SequenceFamily::YI:
            return "YI";
        case SequenceFamily::ZI:
            return "ZI";
        case SequenceFamily::GA8A:
            return "GA8A";
        case SequenceFamily::GA16A:
            return "GA16A";
        case SequenceFamily::GA32A:
            return "GA32A";
    }
    return "?";
}

SequenceFamily parse_family(std::string_view s) {
    for (auto f : {SequenceFamily::FREE, SequenceFamily::XY4, SequenceFamily::XI, SequenceFamily::YI,
                   SequenceFamily::ZI, SequenceFamily::GA8A, SequenceFamily::GA16A, SequenceFamily::GA32A}) {
        if (family_name(f) == s) {
            return f;
        }
    }
    throw InvalidInput("unknown sequence family '" + std::string(s) + "'");
}

int labels_per_repetition(SequenceFamily f) {
    switch (f) {
        case SequenceFamily::FREE:
            return 1;
        case SequenceFamily::XY4:
            return 4;
        case SequenceFamily::XI:
        case SequenceFamily::YI:
        case SequenceFamily::ZI:
            return 2;
        case SequenceFamily::GA8A:
            return 8;
        case SequenceFamily::GA16A:
            return 16;
        case SequenceFamily::GA32A:
            return 32;
    }
    return 1;
}

int identity_period(SequenceFamily f) {
    switch (f) {
        case SequenceFamily::XI:
        case SequenceFamily::YI:
        case SequenceFamily::ZI:
            return 4;
        default:
            return labels_per_repetition(f);
    }
}

void SequenceDef::validate() const {
    if (repetitions < 1) {
        throw InvalidInput("SequenceDef: repetitions must be positive");
    }
    if (is_ga(family)) {
        if (p1 == Pauli::I || p2 == Pauli::I || p1 == p2) {
            throw InvalidInput("SequenceDef: GA sequences need P1 != P2, both in {X, Y, Z}");
        }
    }
}

std::vector<PulseLabel> build_sequence(const SequenceDef &def) {
    def.validate();
    std::vector<PulseLabel> one;
    switch (def.family) {
        case SequenceFamily::FREE:
            one = {PulseLabel{}};
            break;
        case SequenceFamily::XY4:
            one = {{Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::X, 0}, {Pauli::Y, 0}};
            break;
        case SequenceFamily::XI:
            one = {{Pauli::X, 0}, {}};
            break;
        case SequenceFamily::YI:
            one = {{Pauli::Y, 0}, {}};
            break;
        case SequenceFamily::ZI:
            one = {{Pauli::Z, 0}, {}};
            break;
        case SequenceFamily::GA8A:
            one = ga8a_block(def.p1, def.p2, PulseLabel{});
            break;
        case SequenceFamily::GA16A: {
            PulseLabel p3{remaining_pauli(def.p1, def.p2), 0};
            one = ga8a_block(def.p1, def.p2, p3);
            auto again = one;
            one.insert(one.end(), again.begin(), again.end());
            break;
        }
        case SequenceFamily::GA32A: {
            for (Pauli outer : {Pauli::X, Pauli::Y, Pauli::X, Pauli::Y}) {
                // The block's leading slot is I, so I·P_outer = P_outer.
                PulseLabel lead = PulseLabel{} * PulseLabel{outer, 0};
                auto block = ga8a_block(def.p1, def.p2, lead);
                one.insert(one.end(), block.begin(), block.end());
            }
            break;
        }
    }
    std::vector<PulseLabel> out;
    out.reserve(one.size() * static_cast<std::size_t>(def.repetitions));
    for (int r = 0; r < def.repetitions; ++r) {
        out.insert(out.end(), one.begin(), one.end());
    }
    return out;
}

PulseLabel label_product(const std::vector<PulseLabel> &labels) {
    PulseLabel acc{};
    for (const auto &l : labels) {
        acc = l * acc;
    }
    return acc;
}

void DeviceTimingProfile::validate() const {
    if (!(pulse_width_ns > 0) || !(buffer_ns > 0) || !(identity_slot_ns > 0) || shots_per_experiment <= 0) {
        throw InvalidInput("DeviceTimingProfile: durations and shots must be positive");
    }
    if (std::abs(identity_slot_ns - (pulse_width_ns + buffer_ns)) > 1e-9) {
        throw InvalidInput("DeviceTimingProfile: identity_slot_ns must equal pulse_width_ns + buffer_ns");
    }
}

DeviceTimingProfile DeviceTimingProfile::make(std::string name, double pulse_width_ns, double buffer_ns, int shots) {
    DeviceTimingProfile p{std::move(name), pulse_width_ns, buffer_ns, pulse_width_ns + buffer_ns, shots};
    p.validate();
    return p;
}

DeviceTimingProfile timing_profile(std::string_view name) {
    if (name == "ibmqx5") return DeviceTimingProfile::make("ibmqx5", 80, 10, 8192);
    if (name == "acorn") return DeviceTimingProfile::make("acorn", 40, 10, 1000);
    if (name == "ibmqx4") return DeviceTimingProfile::make("ibmqx4", 50, 10, 8192);
    throw InvalidInput("unknown timing profile '" + std::string(name) + "'");
}

std::vector<std::string> timing_profile_names() {
    return {"ibmqx5", "acorn", "ibmqx4"};
}

std::size_t PulseSchedule::slot_count_for_labels(int n_labels) const {
    if (n_labels < 0 || n_labels > label_count) {
        throw InvalidInput("slot_count_for_labels: label count out of range");
    }
    return static_cast<std::size_t>(n_labels) * static_cast<std::size_t>(tau_multiplier);
}

PulseSchedule compile_schedule(const std::vector<PulseLabel> &labels, const DeviceTimingProfile &profile,
                               int tau_multiplier) {
    profile.validate();
    if (tau_multiplier < 1) {
        throw InvalidInput("compile_schedule: tau multiplier must be an integer >= 1");
    }
    PulseSchedule s;
    s.tau_multiplier = tau_multiplier;
    s.label_count = static_cast<int>(labels.size());
    s.profile = profile;
    s.slots.reserve(labels.size() * static_cast<std::size_t>(tau_multiplier));
    double t = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ScheduleSlot slot;
        slot.kind = labels[i].pauli == Pauli::I ? SlotKind::FREE : SlotKind::PULSE;
        slot.label = labels[i];
        slot.duration_ns = profile.identity_slot_ns;
        slot.start_ns = t;
        slot.label_index = static_cast<int>(i);
        s.slots.push_back(slot);
        t += slot.duration_ns;
        for (int k = 1; k < tau_multiplier; ++k) {
            ScheduleSlot idle;
            idle.kind = SlotKind::FREE;
            idle.duration_ns = profile.identity_slot_ns;
            idle.start_ns = t;
            idle.label_index = static_cast<int>(i);
            s.slots.push_back(idle);
            t += idle.duration_ns;
        }
    }
    s.total_ns = t;
    return s;
}

void check_schedule(const PulseSchedule &s) {
    double t = 0;
    for (const auto &slot : s.slots) {
        if (std::abs(slot.start_ns - t) > 1e-9 || !(slot.duration_ns > 0)) {
            throw InternalError("schedule slots are not contiguous");
        }
        t += slot.duration_ns;
    }
    if (std::abs(t - s.total_ns) > 1e-9) {
        throw InternalError("schedule total_ns differs from the sum of slot durations");
    }
}

}  // namespace ddlab
