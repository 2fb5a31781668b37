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

#ifndef DDLAB_QUANTUM_H
#define DDLAB_QUANTUM_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/linalg.h"
#include "ddlab/random.h"

namespace ddlab {

inline constexpr double kUnitarityTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = 1e-9;

/// Square unitary on 2^n levels, n ≤ 6. Construction checks U†U = I.
class Unitary {
   public:
    explicit Unitary(CMatrix entries);

    Eigen::Index dim() const {
        return m_.rows();
    }
    const CMatrix &matrix() const {
        return m_;
    }
    Unitary adjoint() const;
    Unitary operator*(const Unitary &rhs) const;
    Unitary tensor(const Unitary &rhs) const;

   private:
    CMatrix m_;
};

class PureState {
   public:
    explicit PureState(CVector amplitudes);

    Eigen::Index dim() const {
        return v_.size();
    }
    const CVector &amplitudes() const {
        return v_;
    }
    PureState apply(const Unitary &u) const;
    PureState tensor(const PureState &rhs) const;
    /// |⟨this|other⟩|².
    double overlap(const PureState &other) const;
    /// True when the two states are equal up to a global phase.
    bool same_ray(const PureState &other, double tol = 1e-10) const;

   private:
    CVector v_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
   public:
    explicit DensityMatrix(CMatrix entries);
    static DensityMatrix from_pure(const PureState &psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const {
        return m_.rows();
    }
    const CMatrix &matrix() const {
        return m_;
    }
    DensityMatrix apply(const Unitary &u) const;
    DensityMatrix tensor(const DensityMatrix &rhs) const;
    /// Traces out one factor of a (dim_a × dim_b) bipartition.
    DensityMatrix partial_trace(Eigen::Index dim_a, Eigen::Index dim_b, bool keep_first) const;
    /// Computational-basis probabilities, clipped to [0, 1].
    std::vector<double> diagonal_probabilities() const;
    /// ⟨ψ|ρ|ψ⟩.
    double expectation(const PureState &psi) const;
    double expectation(const CMatrix &op) const;

   private:
    CMatrix m_;
};

/// Validation helpers, exposed for tests and for checking propagated states.
bool is_unitary(const CMatrix &m, double tol = kUnitarityTol);
bool is_hermitian(const CMatrix &m, double tol = kHermitianTol);
/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const CMatrix &m);

struct EulerAngles {
    double theta = 0;
    double phi = 0;
    double lambda = 0;

    /// Reduces each angle into [0, 2π). Throws InvalidInput on non-finite input.
    static EulerAngles make(double theta, double phi, double lambda);
};

/// i·R_z(φ)·R_y(θ)·R_z(λ) with R_α(a) = exp[i(a/2)σ^α].
///
/// For this sign convention the result equals the standard u3(−θ, −φ, −λ)
/// up to a global phase. Note that U(θ,0,0)|0⟩ = i[cos(θ/2)|0⟩ − sin(θ/2)|1⟩];
/// the relative sign is a Z conjugation and every noise model in this
/// library is Z-covariant.
Unitary euler_unitary(const EulerAngles &angles);

/// R_α(a) = exp[i(a/2)σ^α] for α ∈ {x, y, z}.
CMatrix rotation(char axis, double angle);

enum class GateName { I, X, Y, Z, H, CNOT };

GateName parse_gate_name(std::string_view name);
/// Textbook matrix. CNOT: control is the first (leftmost) tensor factor.
Unitary standard_gate(GateName name);
Unitary standard_gate(std::string_view name);

/// Pauli matrix by index 0..3 = I, X, Y, Z.
const CMatrix &pauli(int index);
/// |0⟩⟨1|.
CMatrix sigma_minus();

enum class BellKind { PhiPlus, PsiPlus };

std::string_view bell_kind_name(BellKind kind);
BellKind parse_bell_kind(std::string_view name);

struct CircuitGate {
    GateName gate;
    std::vector<int> qubits;  // CNOT: {control, target}
};

/// Φ+ → [H q0, CNOT q0→q1]; Ψ+ additionally applies X on q1.
std::vector<CircuitGate> bell_prep(BellKind kind);

/// Full 2^n_qubits unitary of a gate placed on the given qubits.
Unitary gate_unitary(const CircuitGate &g, int n_qubits);
PureState apply_circuit(const std::vector<CircuitGate> &circuit, const PureState &input);

PureState basis_state(Eigen::Index dim, Eigen::Index index);
/// (|00⟩+|11⟩)/√2 or (|01⟩+|10⟩)/√2.
PureState bell_state(BellKind kind);

/// ½ Σ|eig(ρ − σ)|.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// (tr √(√ρ₁ ρ₂ √ρ₁))². Symmetric; rejects inputs whose smallest eigenvalue
/// is below −kPositivityTol.
double uhlmann_fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2);
double uhlmann_fidelity(const CMatrix &rho1, const CMatrix &rho2);

/// Bloch-uniform qubit state: cos θ ~ U[−1, 1], φ ~ U[0, 2π).
PureState haar_random_state(RandomStream &rng);

/// |0⟩, |1⟩, |+⟩, |−⟩, |+i⟩, |−i⟩ in that order.
std::vector<PureState> pauli_eigenstates();

/// Euler angles preparing each Pauli eigenstate from |0⟩ (same order as
/// pauli_eigenstates(), equal as rays).
std::vector<EulerAngles> pauli_eigenstate_angles();

/// Euler angles with U(θ,φ,λ)|0⟩ equal to `psi` as a ray.
EulerAngles angles_for_state(const PureState &psi);

}  // namespace ddlab

#endif
