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

#ifndef DDLAB_EVOLUTION_H
#define DDLAB_EVOLUTION_H

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ddlab/linalg.h"
#include "ddlab/noise.h"
#include "ddlab/quantum.h"
#include "ddlab/random.h"
#include "ddlab/sequences.h"

namespace ddlab {

/// Builds per-slot maps for a register of system qubits (plus the optional
/// spin bath, allowed only with a single system qubit).
///
/// When every channel is coherent the maps are dim×dim unitaries; otherwise
/// they are dim²×dim² superoperators on column-stacked density matrices.
class SlotPropagator {
   public:
    SlotPropagator(const NoiseConfiguration &noise, std::vector<int> device_qubits, DeviceTimingProfile profile);

    Eigen::Index dim() const {
        return dim_;
    }
    int n_qubits() const {
        return static_cast<int>(qubits_.size());
    }
    bool unitary_mode() const {
        return unitary_;
    }
    bool has_bath() const {
        return bath_dim_ > 1;
    }
    Eigen::Index bath_dim() const {
        return bath_dim_;
    }

    /// One slot under constant per-qubit detunings (rad/ns, one per system
    /// qubit; empty means zero).
    CMatrix slot_map(const ScheduleSlot &slot, std::span<const double> detunings = {}) const;
    /// Free evolution for `duration_ns`.
    CMatrix free_map(double duration_ns, std::span<const double> detunings = {}) const;
    /// Map of a map sequence applied first `first` then `second`.
    CMatrix compose(const CMatrix &second, const CMatrix &first) const {
        return second * first;
    }
    CMatrix identity_map() const;
    /// Applies a map to a joint density matrix.
    CMatrix apply(const CMatrix &map, const CMatrix &rho) const;

   private:
    CMatrix hamiltonian(std::span<const double> detunings) const;
    CMatrix drive_hamiltonian(int pauli_index) const;
    CMatrix generator_map(const CMatrix &h, double duration_ns) const;
    CMatrix pulse_unitary(int pauli_index) const;
    CMatrix depolarizing_superop() const;

    NoiseConfiguration noise_;
    std::vector<int> qubits_;
    DeviceTimingProfile profile_;
    Eigen::Index bath_dim_ = 1;
    Eigen::Index dim_ = 2;
    bool unitary_ = true;
    CMatrix static_h_;                 // bath model terms on the joint space
    std::vector<CMatrix> jumps_;       // on the joint space
    std::vector<CMatrix> sigma_z_;     // per system qubit, joint space
    std::vector<double> depolarizing_;  // per system qubit
};

/// exp(t·L) for a Lindblad generator built from `h` and `jumps` on a
/// dim-level space, as a superoperator. Throws InternalError if the result
/// cannot be made trace preserving within 1e-9 even after subdividing the
/// step.
CMatrix lindblad_propagator(const CMatrix &h, const std::vector<CMatrix> &jumps, double t);

/// Batch propagation of one schedule for several initial system states.
struct EvolutionRequest {
    std::vector<int> device_qubits{0};
    std::vector<CMatrix> initial_states;     // system density matrices
    std::vector<CMatrix> measurement_frames;  // per state, applied as V ρ V† before readout; may be empty
    PulseSchedule schedule;
    std::vector<int> checkpoints;  // label counts, non-decreasing, ≤ schedule.label_count
    NoiseConfiguration noise;
    std::uint64_t seed = 0;
};

struct EvolutionResult {
    /// states[c][s]: system density matrix at checkpoint c for initial state
    /// s, averaged over classical-noise realizations and with the bath
    /// traced out.
    std::vector<std::vector<CMatrix>> states;
};

EvolutionResult evolve(const EvolutionRequest &request);

/// Detuning realization m for a device qubit, one value per slot (slots are
/// one identity slot long). Common to every schedule with the same seed.
DetuningTrajectory detuning_realization(const ClassicalDephasingNoise &noise, std::uint64_t seed, int device_qubit,
                                        int realization, std::size_t n_slots, double slot_ns);

/// Convenience single-slot step. `rho` lives on the system (⊗ bath when the
/// configuration has one) space.
DensityMatrix propagate_slot(const DensityMatrix &rho, const ScheduleSlot &slot, const NoiseConfiguration &noise,
                             const DeviceTimingProfile &profile, const std::vector<int> &device_qubits = {0},
                             std::span<const double> detunings = {});

/// The prepare–evolve–unprepare protocol for one initial condition.
struct ScheduledRun {
    std::variant<EulerAngles, BellKind> initial = EulerAngles{};
    PulseSchedule schedule;
    NoiseConfiguration noise;
    std::vector<int> device_qubits{0};
    int shots = 0;
    std::uint64_t seed = 0;
};

/// Euler runs end with the adjoint preparation; Bell runs are measured
/// directly. Returns the system state before readout.
DensityMatrix run_schedule(const ScheduledRun &run);

struct ShotResult {
    std::vector<std::uint64_t> counts;      // per computational basis state
    std::vector<double> probabilities;      // reported (post-readout) probabilities
    double fidelity = 0;                    // fraction of all-zeros outcomes
};

/// Diagonal of ρ through the confusion matrices, then a multinomial draw.
ShotResult measure_shots(const DensityMatrix &rho, const ReadoutModel &readout, int shots, RandomStream &rng);
/// Same without sampling: counts empty, fidelity = reported p(0…0).
ShotResult measure_exact(const DensityMatrix &rho, const ReadoutModel &readout);

/// Multinomial sample by sequential binomials.
std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs, std::uint64_t n, RandomStream &rng);

}  // namespace ddlab

#endif
