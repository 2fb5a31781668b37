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

#include "ddlab/quantum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ddlab/error.h"

namespace ddlab {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0, 1};

double reduce_angle(double a) {
    double r = std::fmod(a, 2 * kPi);
    if (r < 0) {
        r += 2 * kPi;
    }
    if (r >= 2 * kPi) {
        r = 0;
    }
    return r;
}

void require_square(const CMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!is_power_of_two(m.rows()) || m.rows() > 64) {
        throw InvalidInput(std::string(what) + ": dimension must be 2^n with n <= 6");
    }
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix &m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Eigenvalues this close to zero are rounding noise, and their square roots
// (~1e-8) would otherwise leak into fidelities of pure states.
Eigen::VectorXd clean_spectrum(const Eigen::VectorXd &ev) {
    double floor = 32 * std::numeric_limits<double>::epsilon() * std::max(1.0, ev.cwiseAbs().maxCoeff());
    return ev.unaryExpr([floor](double x) { return x < floor ? 0.0 : x; });
}

CMatrix psd_sqrt(const CMatrix &m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    Eigen::VectorXd ev = clean_spectrum(es.eigenvalues()).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

bool is_unitary(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs_diff(m.adjoint() * m, CMatrix::Identity(m.rows(), m.rows())) <= tol;
}

bool is_hermitian(const CMatrix &m, double tol) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

double min_eigenvalue(const CMatrix &m) {
    return hermitian_eigenvalues(m).minCoeff();
}

Unitary::Unitary(CMatrix entries) : m_(std::move(entries)) {
    require_square(m_, "Unitary");
    if (!m_.allFinite()) {
        throw InvalidInput("Unitary: non-finite entries");
    }
    if (!is_unitary(m_)) {
        throw InvalidInput("Unitary: U^dagger U deviates from identity");
    }
}

Unitary Unitary::adjoint() const {
    return Unitary(m_.adjoint());
}

Unitary Unitary::operator*(const Unitary &rhs) const {
    if (dim() != rhs.dim()) {
        throw InvalidInput("Unitary product: dimension mismatch");
    }
    return Unitary(m_ * rhs.m_);
}

Unitary Unitary::tensor(const Unitary &rhs) const {
    return Unitary(kron(m_, rhs.m_));
}

PureState::PureState(CVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0 || !is_power_of_two(v_.size()) || v_.size() > 64) {
        throw InvalidInput("PureState: dimension must be 2^n with n <= 6");
    }
    if (!v_.allFinite() || std::abs(v_.norm() - 1.0) > kNormTol) {
        throw InvalidInput("PureState: amplitudes must have unit norm");
    }
}

PureState PureState::apply(const Unitary &u) const {
    if (u.dim() != dim()) {
        throw InvalidInput("PureState::apply: dimension mismatch");
    }
    return PureState(u.matrix() * v_);
}

PureState PureState::tensor(const PureState &rhs) const {
    return PureState(kron(v_, rhs.v_));
}

double PureState::overlap(const PureState &other) const {
    if (other.dim() != dim()) {
        throw InvalidInput("PureState::overlap: dimension mismatch");
    }
    return std::norm(v_.dot(other.v_));
}

bool PureState::same_ray(const PureState &other, double tol) const {
    return other.dim() == dim() && std::abs(1.0 - overlap(other)) <= tol;
}

DensityMatrix::DensityMatrix(CMatrix entries) : m_(std::move(entries)) {
    require_square(m_, "DensityMatrix");
    if (!m_.allFinite()) {
        throw InvalidInput("DensityMatrix: non-finite entries");
    }
    if (!is_hermitian(m_)) {
        throw InvalidInput("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace().real() - 1.0) > kTraceTol) {
        throw InvalidInput("DensityMatrix: trace differs from 1");
    }
    if (min_eigenvalue(m_) < -kPositivityTol) {
        throw InvalidInput("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::apply(const Unitary &u) const {
    if (u.dim() != dim()) {
        throw InvalidInput("DensityMatrix::apply: dimension mismatch");
    }
    CMatrix out = u.matrix() * m_ * u.matrix().adjoint();
    return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix &rhs) const {
    return DensityMatrix(kron(m_, rhs.m_));
}

DensityMatrix DensityMatrix::partial_trace(Eigen::Index dim_a, Eigen::Index dim_b, bool keep_first) const {
    if (dim_a * dim_b != dim()) {
        throw InvalidInput("partial_trace: factor dimensions do not match");
    }
    return DensityMatrix(ddlab::partial_trace(m_, dim_a, dim_b, keep_first));
}

std::vector<double> DensityMatrix::diagonal_probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(dim()));
    for (Eigen::Index i = 0; i < dim(); ++i) {
        p[static_cast<std::size_t>(i)] = std::clamp(m_(i, i).real(), 0.0, 1.0);
    }
    return p;
}

double DensityMatrix::expectation(const PureState &psi) const {
    return psi.amplitudes().dot(m_ * psi.amplitudes()).real();
}

double DensityMatrix::expectation(const CMatrix &op) const {
    return (op * m_).trace().real();
}

EulerAngles EulerAngles::make(double theta, double phi, double lambda) {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(lambda)) {
        throw InvalidInput("EulerAngles: angles must be finite");
    }
    return EulerAngles{reduce_angle(theta), reduce_angle(phi), reduce_angle(lambda)};
}

CMatrix rotation(char axis, double angle) {
    int idx = 0;
    switch (axis) {
        case 'x':
            idx = 1;
            break;
        case 'y':
            idx = 2;
            break;
        case 'z':
            idx = 3;
            break;
        default:
            throw InvalidInput(std::string("rotation: unknown axis '") + axis + "'");
    }
    return std::cos(angle / 2) * pauli(0) + kI * std::sin(angle / 2) * pauli(idx);
}

Unitary euler_unitary(const EulerAngles &angles) {
    if (!std::isfinite(angles.theta) || !std::isfinite(angles.phi) || !std::isfinite(angles.lambda)) {
        throw InvalidInput("euler_unitary: angles must be finite");
    }
    CMatrix u = kI * rotation('z', angles.phi) * rotation('y', angles.theta) * rotation('z', angles.lambda);
    return Unitary(std::move(u));
}

const CMatrix &pauli(int index) {
    static const std::array<CMatrix, 4> kPaulis = [] {
        std::array<CMatrix, 4> p;
        p[0] = CMatrix::Identity(2, 2);
        p[1] = CMatrix::Zero(2, 2);
        p[1] << 0, 1, 1, 0;
        p[2] = CMatrix::Zero(2, 2);
        p[2] << 0, -kI, kI, 0;
        p[3] = CMatrix::Zero(2, 2);
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    if (index < 0 || index > 3) {
        throw InvalidInput("pauli: index out of range");
    }
    return kPaulis[static_cast<std::size_t>(index)];
}

CMatrix sigma_minus() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

GateName parse_gate_name(std::string_view name) {
    if (name == "I" || name == "id") return GateName::I;
    if (name == "X" || name == "x") return GateName::X;
    if (name == "Y" || name == "y") return GateName::Y;
    if (name == "Z" || name == "z") return GateName::Z;
    if (name == "H" || name == "h") return GateName::H;
    if (name == "CNOT" || name == "cx") return GateName::CNOT;
    throw InvalidInput("unknown gate name '" + std::string(name) + "'");
}

Unitary standard_gate(GateName name) {
    switch (name) {
        case GateName::I:
            return Unitary(pauli(0));
        case GateName::X:
            return Unitary(pauli(1));
        case GateName::Y:
            return Unitary(pauli(2));
        case GateName::Z:
            return Unitary(pauli(3));
        case GateName::H: {
            CMatrix h(2, 2);
            h << 1, 1, 1, -1;
            return Unitary(h / std::sqrt(2.0));
        }
        case GateName::CNOT: {
            CMatrix c = CMatrix::Zero(4, 4);
            c(0, 0) = 1;
            c(1, 1) = 1;
            c(2, 3) = 1;
            c(3, 2) = 1;
            return Unitary(c);
        }
    }
    throw InvalidInput("standard_gate: unknown gate");
}

Unitary standard_gate(std::string_view name) {
    return standard_gate(parse_gate_name(name));
}

std::string_view bell_kind_name(BellKind kind) {
    return kind == BellKind::PhiPlus ? "phi+" : "psi+";
}

BellKind parse_bell_kind(std::string_view name) {
    if (name == "phi+" || name == "Phi+" || name == "PHI_PLUS" || name == "PhiPlus") return BellKind::PhiPlus;
    if (name == "psi+" || name == "Psi+" || name == "PSI_PLUS" || name == "PsiPlus") return BellKind::PsiPlus;
    throw InvalidInput("unknown Bell state '" + std::string(name) + "'");
}

std::vector<CircuitGate> bell_prep(BellKind kind) {
    std::vector<CircuitGate> c{{GateName::H, {0}}, {GateName::CNOT, {0, 1}}};
    if (kind == BellKind::PsiPlus) {
        c.push_back({GateName::X, {1}});
    }
    return c;
}

Unitary gate_unitary(const CircuitGate &g, int n_qubits) {
    if (g.gate == GateName::CNOT) {
        if (g.qubits.size() != 2 || g.qubits[0] == g.qubits[1]) {
            throw InvalidInput("CNOT needs two distinct qubits");
        }
        int c = g.qubits[0];
        int t = g.qubits[1];
        Eigen::Index dim = Eigen::Index{1} << n_qubits;
        CMatrix m = CMatrix::Zero(dim, dim);
        for (Eigen::Index b = 0; b < dim; ++b) {
            Eigen::Index cbit = (b >> (n_qubits - 1 - c)) & 1;
            Eigen::Index out = cbit ? (b ^ (Eigen::Index{1} << (n_qubits - 1 - t))) : b;
            m(out, b) = 1;
        }
        return Unitary(m);
    }
    if (g.qubits.size() != 1 || g.qubits[0] < 0 || g.qubits[0] >= n_qubits) {
        throw InvalidInput("single-qubit gate needs one valid qubit");
    }
    return Unitary(embed_qubit_op(standard_gate(g.gate).matrix(), g.qubits[0], n_qubits));
}

PureState apply_circuit(const std::vector<CircuitGate> &circuit, const PureState &input) {
    int n = 0;
    while ((Eigen::Index{1} << n) < input.dim()) {
        ++n;
    }
    PureState s = input;
    for (const auto &g : circuit) {
        s = s.apply(gate_unitary(g, n));
    }
    return s;
}

PureState basis_state(Eigen::Index dim, Eigen::Index index) {
    if (index < 0 || index >= dim) {
        throw InvalidInput("basis_state: index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = 1;
    return PureState(v);
}

PureState bell_state(BellKind kind) {
    CVector v = CVector::Zero(4);
    double r = 1 / std::sqrt(2.0);
    if (kind == BellKind::PhiPlus) {
        v(0) = r;
        v(3) = r;
    } else {
        v(1) = r;
        v(2) = r;
    }
    return PureState(v);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw InvalidInput("trace_distance: dimension mismatch");
    }
    return 0.5 * hermitian_eigenvalues(rho.matrix() - sigma.matrix()).cwiseAbs().sum();
}

double uhlmann_fidelity(const CMatrix &rho1, const CMatrix &rho2) {
    if (rho1.rows() != rho2.rows() || rho1.rows() != rho1.cols() || rho2.rows() != rho2.cols()) {
        throw InvalidInput("uhlmann_fidelity: dimension mismatch");
    }
    if (min_eigenvalue(rho1) < -kPositivityTol || min_eigenvalue(rho2) < -kPositivityTol) {
        throw InvalidInput("uhlmann_fidelity: input is not positive semidefinite");
    }
    CMatrix s = psd_sqrt(rho1);
    Eigen::VectorXd ev = hermitian_eigenvalues(s * rho2 * s);
    double root_sum = clean_spectrum(ev).cwiseSqrt().sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix &rho1, const DensityMatrix &rho2) {
    return uhlmann_fidelity(rho1.matrix(), rho2.matrix());
}

PureState haar_random_state(RandomStream &rng) {
    double cos_theta = rng.uniform(-1.0, 1.0);
    double phi = rng.uniform(0.0, 2 * kPi);
    double half = std::acos(std::clamp(cos_theta, -1.0, 1.0)) / 2;
    CVector v(2);
    v(0) = std::cos(half);
    v(1) = std::polar(std::sin(half), phi);
    v.normalize();
    return PureState(v);
}

std::vector<PureState> pauli_eigenstates() {
    double r = 1 / std::sqrt(2.0);
    std::vector<PureState> out;
    auto make = [&](cplx a, cplx b) {
        CVector v(2);
        v << a, b;
        out.emplace_back(v);
    };
    make(1, 0);
    make(0, 1);
    make(r, r);
    make(r, -r);
    make(r, kI * r);
    make(r, -kI * r);
    return out;
}

std::vector<EulerAngles> pauli_eigenstate_angles() {
    std::vector<EulerAngles> out;
    for (const auto &s : pauli_eigenstates()) {
        out.push_back(angles_for_state(s));
    }
    return out;
}

EulerAngles angles_for_state(const PureState &psi) {
    if (psi.dim() != 2) {
        throw InvalidInput("angles_for_state: single-qubit state required");
    }
    // U(θ,φ,0)|0⟩ ∝ cos(θ/2)|0⟩ − e^{−iφ} sin(θ/2)|1⟩.
    cplx a = psi.amplitudes()(0);
    cplx b = psi.amplitudes()(1);
    double theta = 2 * std::atan2(std::abs(b), std::abs(a));
    double phi = 0;
    if (std::abs(b) > 1e-15) {
        cplx rel = b / std::abs(b);
        if (std::abs(a) > 1e-15) {
            rel *= std::conj(a) / std::abs(a);
        }
        phi = -std::arg(-rel);
    }
    return EulerAngles::make(theta, phi, 0);
}

}  // namespace ddlab
