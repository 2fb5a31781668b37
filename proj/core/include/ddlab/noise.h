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

#ifndef DDLAB_NOISE_H
#define DDLAB_NOISE_H

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/linalg.h"
#include "ddlab/random.h"

namespace ddlab {

/// One row of a device calibration table. Times in µs, errors as
/// probabilities.
struct QubitNoiseParams {
    int qubit_index = 0;
    double t1_us = 0;
    double t2_us = 0;
    double gate_error = 0;
    double readout_error = 0;

    friend bool operator==(const QubitNoiseParams &, const QubitNoiseParams &) = default;
    /// Positive values and T2 ≤ 2·T1.
    void validate() const;
};

/// Amplitude damping √(1/T1)·σ⁻ plus pure dephasing √(1/(2Tφ))·σ_z,
/// 1/Tφ = 1/T2 − 1/(2T1). Rates are per ns.
struct LindbladModel {
    double amplitude_damping_rate = 0;  // 1/T1
    double dephasing_rate = 0;          // 1/(2Tφ), coefficient of the σ_z jump

    /// Single-qubit jump operators with the rates folded in (√rate · L).
    std::vector<CMatrix> jump_operators() const;
    /// Tφ in µs; infinite when the dephasing rate is zero.
    double tphi_us() const;
};

/// Throws InvalidInput when T2 > 2·T1.
LindbladModel lindblad_from_params(const QubitNoiseParams &params);

/// Coherent system⊗bath model with one system qubit (leftmost tensor factor)
/// and up to three bath qubits. Angular frequencies in rad/ns.
///
///   H_S  = −(δ/2) σ_z
///   H_B  = −Σ_j (ω_j/2) σ_z^(j)
///   H_SB = Σ_j Σ_{α,β} g[j][α][β] σ^α ⊗ σ^β_(j) + Σ_j g_JC[j] (σ⁻⊗σ⁺_(j) + σ⁺⊗σ⁻_(j))
///
/// With this sign choice |0⟩ is the low-energy level for positive ω.
struct SpinBathModel {
    using Tensor = std::array<std::array<double, 3>, 3>;  // [system axis][bath axis]

    double system_detuning = 0;
    std::vector<double> bath_splittings;  // one per bath qubit
    std::vector<Tensor> coupling;         // one per bath qubit
    std::vector<double> exchange;         // g_JC per bath qubit

    int n_bath() const {
        return static_cast<int>(bath_splittings.size());
    }
    Eigen::Index bath_dim() const {
        return Eigen::Index{1} << n_bath();
    }
    Eigen::Index joint_dim() const {
        return 2 * bath_dim();
    }
    void validate() const;

    CMatrix system_hamiltonian() const;    // on the joint space
    CMatrix bath_hamiltonian() const;      // on the joint space
    CMatrix coupling_hamiltonian() const;  // H_SB on the joint space
    CMatrix total_hamiltonian() const;
    /// Lowest-energy computational basis state of H_B (ties broken toward
    /// the smallest index), as a bath density matrix.
    CMatrix bath_ground_state() const;

    /// Pure dephasing g_z σ_z⊗σ_z with a bath splitting ω.
    static SpinBathModel pure_dephasing(double g_z, double omega);
    /// Exchange-only coupling g_JC (σ⁻⊗σ⁺ + h.c.), resonant bath.
    static SpinBathModel exchange_only(double g_jc, double omega);
    /// Random couplings: every tensor entry ~ strength·N(0,1), splittings
    /// ~ omega_scale·U[0.5, 1.5].
    static SpinBathModel random(int n_bath, double strength, double omega_scale, RandomStream &rng);
};

enum class ClassicalNoiseKind { NONE, STATIC_GAUSSIAN, RTN, OU };

std::string_view classical_kind_name(ClassicalNoiseKind k);
ClassicalNoiseKind parse_classical_kind(std::string_view s);

/// Low-frequency detuning noise entering as H = −(δ(t)/2) σ_z per qubit.
/// `amplitude` is σ_δ for STATIC_GAUSSIAN, the telegraph level ±a for RTN
/// and the stationary standard deviation for OU (rad/ns).
struct ClassicalDephasingNoise {
    ClassicalNoiseKind kind = ClassicalNoiseKind::NONE;
    double amplitude = 0;
    double flip_rate_per_ns = 0;     // RTN
    double correlation_time_ns = 0;  // OU
    int realizations = 200;

    friend bool operator==(const ClassicalDephasingNoise &, const ClassicalDephasingNoise &) = default;
    bool active() const {
        return kind != ClassicalNoiseKind::NONE;
    }
    void validate() const;
};

/// Piecewise-constant detuning, value[i] on [i·dt, (i+1)·dt).
struct DetuningTrajectory {
    double dt_ns = 0;
    std::vector<double> values;

    double at(double t_ns) const;
};

DetuningTrajectory sample_classical_trajectory(const ClassicalDephasingNoise &noise, double duration_ns,
                                               double dt_ns, RandomStream &rng);

enum class PulseMode { INSTANTANEOUS, FINITE_WIDTH };

std::string_view pulse_mode_name(PulseMode m);
PulseMode parse_pulse_mode(std::string_view s);

/// Rotation error: the target π rotation becomes π(1+ε) about an axis tilted
/// by `axis_tilt_rad` toward z (x, y pulses) or toward x (z pulses).
/// `depolarizing_prob_per_pulse` is added to the table-derived 2·gate_error.
struct PulseErrorModel {
    PulseMode mode = PulseMode::INSTANTANEOUS;
    double over_rotation_fraction = 0;
    double axis_tilt_rad = 0;
    double depolarizing_prob_per_pulse = 0;

    friend bool operator==(const PulseErrorModel &, const PulseErrorModel &) = default;
    void validate() const;
    /// Unit rotation axis for a Pauli pulse (1 = X, 2 = Y, 3 = Z).
    std::array<double, 3> axis(int pauli_index) const;
};

/// Per-qubit column-stochastic confusion matrices,
/// C[a][b] = Pr(report a | true b). Qubit 0 is the most significant bit of
/// a basis index.
struct ReadoutModel {
    std::vector<Eigen::Matrix2d> confusion;

    static ReadoutModel perfect(int n_qubits);
    /// Both flip probabilities equal the readout error.
    static ReadoutModel symmetric(const std::vector<double> &errors);
    /// Pr(1|0) = p10, Pr(0|1) = p01.
    static Eigen::Matrix2d asymmetric(double p1_given_0, double p0_given_1);
    int n_qubits() const {
        return static_cast<int>(confusion.size());
    }
    void validate() const;
};

std::vector<double> apply_readout(const ReadoutModel &model, const std::vector<double> &true_probs);

/// Everything the engine needs to know about noise, keyed by device qubit.
struct NoiseConfiguration {
    std::string name = "ideal";
    /// Calibration rows. A single row with qubit_index −1 applies to every
    /// qubit.
    std::vector<QubitNoiseParams> qubit_params;
    bool lindblad = false;
    bool gate_depolarizing = false;  // 2·gate_error per pulse
    bool readout = false;
    /// Overrides the symmetric table readout with (Pr(1|0), Pr(0|1)).
    std::optional<std::array<double, 2>> readout_flips;
    PulseErrorModel pulse;
    ClassicalDephasingNoise classical;
    std::optional<SpinBathModel> bath;

    friend bool operator==(const NoiseConfiguration &, const NoiseConfiguration &) = default;
    void validate() const;

    const QubitNoiseParams &params_for(int device_qubit) const;
    std::optional<LindbladModel> lindblad_for(int device_qubit) const;
    double depolarizing_for(int device_qubit) const;
    Eigen::Matrix2d confusion_for(int device_qubit) const;
    ReadoutModel readout_for(const std::vector<int> &device_qubits) const;
    /// True when every channel is unitary (no Lindblad, no depolarizing).
    bool coherent_only(const std::vector<int> &device_qubits) const;
};

bool operator==(const SpinBathModel &a, const SpinBathModel &b);

/// Named configurations:
///   ideal                    no noise at all
///   ibmqx5_mean              IBMQX5 table means; Lindblad, gate error, readout
///   ibmqx5_mean_calibrated   ibmqx5_mean + finite-width pulses + a static
///                            Gaussian detuning ensemble whose width puts
///                            the free-evolution decay constant near 29 pulses
///   ibmqx5, acorn, ibmqx4    per-qubit table rows; Lindblad, gate error, readout
///   acorn_mean, ibmqx4_mean  table means as for ibmqx5_mean
NoiseConfiguration noise_preset(std::string_view name);
std::vector<std::string> noise_preset_names();

/// σ_δ (rad/ns) used by the calibrated preset.
double calibrated_static_sigma();

}  // namespace ddlab

#endif
