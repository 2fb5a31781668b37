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

#ifndef DDLAB_EXPERIMENTS_H
#define DDLAB_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/noise.h"
#include "ddlab/quantum.h"
#include "ddlab/sequences.h"

namespace ddlab {

enum class ExperimentKind {
    TYPE1_SWEEP,
    TYPE2_ENSEMBLE,
    PULSE_NUMBER_SWEEP,
    PULSE_INTERVAL_SWEEP,
    BELL,
    DEPHASING_VS_SE
};

std::string_view experiment_kind_name(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view s);

/// A declarative sweep. `sequences[i].repetitions` is ignored; the label
/// count comes from `n_values`.
struct ExperimentSpec {
    static constexpr int kSchemaVersion = 1;

    int schema_version = kSchemaVersion;
    ExperimentKind kind = ExperimentKind::PULSE_NUMBER_SWEEP;
    std::vector<SequenceDef> sequences;
    std::vector<int> n_values;         // label counts, strictly increasing, ≥ 0
    std::vector<int> tau_multipliers{1};
    std::string timing_profile = "ibmqx5";
    std::string noise_preset = "ideal";         // used unless `noise` is set
    std::optional<NoiseConfiguration> noise;    // explicit configuration
    std::vector<int> qubits{0};                 // single-qubit kinds
    std::vector<std::array<int, 2>> qubit_pairs;  // BELL
    std::vector<BellKind> bell_states{BellKind::PhiPlus, BellKind::PsiPlus};
    int shots = 8192;  // 0 → exact probabilities, no sampling
    std::uint64_t seed = 0;

    friend bool operator==(const ExperimentSpec &, const ExperimentSpec &) = default;

    /// Throws SchemaError with a JSON pointer to the offending field.
    void validate() const;
    NoiseConfiguration resolved_noise() const;
};

/// θ_k = kπ/15, k = 0..15, φ = λ = 0.
std::vector<EulerAngles> type1_states();
/// 30 Bloch-uniform states drawn from the seed, then the six Pauli
/// eigenstates, as preparation angles.
std::vector<EulerAngles> type2_states(std::uint64_t seed);

/// Canonical display name: the family, plus "(P1P2)" for GA sequences with
/// non-default pulse types.
std::string sequence_label(const SequenceDef &def);
SequenceDef parse_sequence_label(std::string_view s);

/// First `n_labels` labels of the repeated sequence.
std::vector<PulseLabel> sequence_prefix(const SequenceDef &def, int n_labels);

struct ResultRecord {
    std::string sequence;
    std::string qubits;  // "3" or "0-1"
    std::string state;   // index for single-qubit states, Bell name otherwise
    int n = 0;
    int tau = 1;
    int shots = 0;       // 0 for exact probabilities
    double fidelity = 0;
    std::vector<double> probabilities;  // reported outcome probabilities, basis order

    friend bool operator==(const ResultRecord &, const ResultRecord &) = default;
};

struct ResultSet {
    ExperimentSpec spec;
    std::vector<ResultRecord> records;
};

/// Runs every cell of the sweep. Records are in canonical order: sequence
/// (spec order), qubit, state, τ, N.
ResultSet run_experiment(const ExperimentSpec &spec);

/// The free-evolution decay constant (from fitting the SELF_CONSISTENT
/// model to the type-2 ensemble) as a function of the static-Gaussian
/// detuning width, and the bisection solving it for a target.
struct CalibrationSetup {
    NoiseConfiguration base;  // classical noise is overwritten
    std::string timing_profile = "ibmqx5";
    std::vector<int> n_values;
    int realizations = 200;
    std::uint64_t seed = 0;
};
double free_decay_constant(const CalibrationSetup &setup, double sigma);
double calibrate_static_sigma(const CalibrationSetup &setup, double target_lambda, double lo, double hi,
                              int iterations = 30);

/// Fidelity grid for the infidelity-bound analysis: Uhlmann fidelity between
/// the system state under the full spin-bath Hamiltonian and under the same
/// Hamiltonian with H_SB removed, ideal instantaneous pulses.
struct BoundGrid {
    std::vector<int> taus;
    std::vector<int> n_values;
    std::vector<std::vector<double>> fidelity;  // [n index][τ index], worst case over initial states
};
BoundGrid simulate_bound_grid(const SpinBathModel &bath, const SequenceDef &seq, const DeviceTimingProfile &profile,
                              const std::vector<int> &taus, const std::vector<int> &n_values,
                              const std::vector<EulerAngles> &initial_states);

}  // namespace ddlab

#endif
