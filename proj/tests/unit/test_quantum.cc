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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ddlab/error.h"
#include "ddlab/quantum.h"
#include "oracles.h"

namespace {

using namespace ddlab;
constexpr double kPi = std::numbers::pi;

CMatrix ket_bra(const CVector &v) {
    return v * v.adjoint();
}

// Brute-force trace norm via eigenvalues of a Hermitian difference.
double trace_distance_oracle(const CMatrix &a, const CMatrix &b) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

TEST(EulerUnitary, PiZeroPiIsX) {
    auto u = euler_unitary(EulerAngles::make(kPi, 0, kPi));
    EXPECT_LT(phase_aligned_diff(u.matrix(), oracle::paulis(1)), 1e-12);
}

TEST(EulerUnitary, PiTwoPiZeroIsY) {
    auto u = euler_unitary(EulerAngles::make(kPi, 2 * kPi, 0));
    EXPECT_LT(phase_aligned_diff(u.matrix(), oracle::paulis(2)), 1e-12);
}

TEST(EulerUnitary, ZeroAnglesGiveIdentityTimesI) {
    auto u = euler_unitary(EulerAngles::make(0, 0, 0));
    CMatrix want = cplx(0, 1) * CMatrix::Identity(2, 2);
    EXPECT_LT(max_abs_diff(u.matrix(), want), 1e-14);
}

TEST(EulerUnitary, MatchesRotationProductOracle) {
    // i Rz(phi) Ry(theta) Rz(lambda) with R_a(x) = exp(i x/2 sigma_a).
    RandomStream rng({17});
    for (int t = 0; t < 20; ++t) {
        double th = rng.uniform(0, 2 * kPi), ph = rng.uniform(0, 2 * kPi), la = rng.uniform(0, 2 * kPi);
        auto r = [](int a, double x) { return oracle::expm(oracle::cd(0, x / 2) * oracle::paulis(a)); };
        CMatrix want = oracle::cd(0, 1) * r(3, ph) * r(2, th) * r(3, la);
        EXPECT_LT(max_abs_diff(euler_unitary(EulerAngles::make(th, ph, la)).matrix(), want), 1e-12);
    }
}

TEST(EulerAngles, ReducedModuloTwoPi) {
    auto a = EulerAngles::make(-kPi / 2, 5 * kPi, 2 * kPi);
    EXPECT_NEAR(a.theta, 1.5 * kPi, 1e-12);
    EXPECT_NEAR(a.phi, kPi, 1e-12);
    EXPECT_NEAR(a.lambda, 0, 1e-12);
    EXPECT_THROW(EulerAngles::make(NAN, 0, 0), InvalidInput);
    EXPECT_THROW(EulerAngles::make(0, INFINITY, 0), InvalidInput);
}

TEST(StandardGate, TextbookActions) {
    auto plus = basis_state(2, 0).apply(standard_gate("H"));
    CVector want(2);
    want << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    EXPECT_TRUE(plus.same_ray(PureState(want)));

    auto x = standard_gate(GateName::X);
    EXPECT_LT(max_abs_diff((x * x).matrix(), CMatrix::Identity(2, 2)), 1e-15);

    auto out = basis_state(4, 2).apply(standard_gate("CNOT"));  // |10> -> |11>
    EXPECT_NEAR(out.overlap(basis_state(4, 3)), 1.0, 1e-15);
    EXPECT_THROW(standard_gate("T"), InvalidInput);
}

TEST(UnitaryType, RejectsNonUnitary) {
    CMatrix m = CMatrix::Identity(2, 2);
    m(0, 0) = 1.001;
    EXPECT_THROW(Unitary{m}, InvalidInput);
    EXPECT_THROW(Unitary{CMatrix::Identity(3, 3)}, InvalidInput);
}

TEST(DensityMatrixType, RejectsBadInput) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.1;
    m(1, 1) = -0.1;
    EXPECT_THROW(DensityMatrix{m}, InvalidInput);
    CMatrix nh = CMatrix::Identity(2, 2) / 2.0;
    nh(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix{nh}, InvalidInput);
}

TEST(BellPrep, CircuitsProduceBellStates) {
    auto phi = apply_circuit(bell_prep(BellKind::PhiPlus), basis_state(4, 0));
    CVector want(4);
    want << 1, 0, 0, 1;
    want /= std::sqrt(2.0);
    EXPECT_TRUE(phi.same_ray(PureState(want)));

    auto psi = apply_circuit(bell_prep(BellKind::PsiPlus), basis_state(4, 0));
    want << 0, 1, 1, 0;
    want /= std::sqrt(2.0);
    EXPECT_TRUE(psi.same_ray(PureState(want)));

    auto p = DensityMatrix::from_pure(phi).diagonal_probabilities();
    EXPECT_NEAR(p[0], 0.5, 1e-14);
    EXPECT_NEAR(p[1], 0.0, 1e-14);
    EXPECT_NEAR(p[2], 0.0, 1e-14);
    EXPECT_NEAR(p[3], 0.5, 1e-14);
    EXPECT_TRUE(bell_state(BellKind::PsiPlus).same_ray(psi));
}

TEST(BellPrep, GateListShape) {
    auto c = bell_prep(BellKind::PsiPlus);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].gate, GateName::H);
    EXPECT_EQ(c[1].gate, GateName::CNOT);
    EXPECT_EQ(c[1].qubits, (std::vector<int>{0, 1}));
    EXPECT_EQ(c[2].gate, GateName::X);
    EXPECT_EQ(c[2].qubits, (std::vector<int>{1}));
    EXPECT_EQ(parse_bell_kind("phi+"), BellKind::PhiPlus);
    EXPECT_EQ(parse_bell_kind("psi+"), BellKind::PsiPlus);
}

TEST(TraceDistance, Examples) {
    auto r0 = DensityMatrix::from_pure(basis_state(2, 0));
    auto r1 = DensityMatrix::from_pure(basis_state(2, 1));
    CVector plus(2);
    plus << 1, 1;
    plus /= std::sqrt(2.0);
    auto rp = DensityMatrix(ket_bra(plus));
    EXPECT_NEAR(trace_distance(r0, r0), 0, 1e-14);
    EXPECT_NEAR(trace_distance(r0, r1), 1, 1e-14);
    EXPECT_NEAR(trace_distance(r0, rp), trace_distance_oracle(r0.matrix(), rp.matrix()), 1e-12);
    EXPECT_NEAR(trace_distance(r0, rp), 1 / std::sqrt(2.0), 1e-12);
    EXPECT_THROW(trace_distance(r0, DensityMatrix::maximally_mixed(4)), InvalidInput);
}

TEST(UhlmannFidelity, Examples) {
    auto r0 = DensityMatrix::from_pure(basis_state(2, 0));
    auto r1 = DensityMatrix::from_pure(basis_state(2, 1));
    auto mixed = DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(uhlmann_fidelity(r0, r0), 1, 1e-10);
    EXPECT_NEAR(uhlmann_fidelity(r0, r1), 0, 1e-10);
    EXPECT_NEAR(uhlmann_fidelity(r0, mixed), 0.5, 1e-10);
}

TEST(UhlmannFidelity, SymmetricOnRandomMixedStates) {
    RandomStream rng({23});
    for (int t = 0; t < 20; ++t) {
        CMatrix a(2, 2), b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                a(i, j) = cplx(rng.normal(), rng.normal());
                b(i, j) = cplx(rng.normal(), rng.normal());
            }
        a = a * a.adjoint();
        b = b * b.adjoint();
        a /= a.trace();
        b /= b.trace();
        EXPECT_NEAR(uhlmann_fidelity(a, b), uhlmann_fidelity(b, a), 1e-10);
        double f = uhlmann_fidelity(a, b);
        EXPECT_GE(f, -1e-12);
        EXPECT_LE(f, 1 + 1e-12);
    }
}

TEST(PureStates, TraceDistanceAndFidelityComplement) {
    RandomStream rng({29});
    for (int t = 0; t < 50; ++t) {
        auto a = haar_random_state(rng), b = haar_random_state(rng);
        auto ra = DensityMatrix::from_pure(a), rb = DensityMatrix::from_pure(b);
        double d = trace_distance(ra, rb), f = uhlmann_fidelity(ra, rb);
        EXPECT_NEAR(d * d + f, 1.0, 1e-10);
        EXPECT_NEAR(f, oracle::pure_overlap(a.amplitudes(), b.amplitudes()), 1e-10);
    }
}

TEST(HaarRandomState, DeterministicAndUniform) {
    RandomStream a({5, 5}), b({5, 5});
    EXPECT_TRUE(haar_random_state(a).same_ray(haar_random_state(b), 0.0 + 1e-15));

    RandomStream rng({31});
    double s = 0, sz2 = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        auto psi = haar_random_state(rng);
        ASSERT_NEAR(psi.amplitudes().norm(), 1.0, 1e-12);
        double p0 = std::norm(psi.amplitudes()(0));
        s += p0;
        sz2 += std::pow(2 * p0 - 1, 2);
    }
    EXPECT_NEAR(s / n, 0.5, 0.02);
    // <z^2> = 1/3 on the uniform sphere
    EXPECT_NEAR(sz2 / n, 1.0 / 3, 0.02);
}

TEST(PauliEigenstates, SixDistinctEigenstates) {
    auto states = pauli_eigenstates();
    ASSERT_EQ(states.size(), 6u);
    // |0>, |1>, |+>, |->, |+i>, |-i>
    const int axis[6] = {3, 3, 1, 1, 2, 2};
    const double sign[6] = {1, -1, 1, -1, 1, -1};
    for (int i = 0; i < 6; ++i) {
        const CVector &v = states[i].amplitudes();
        cplx e = v.dot(oracle::paulis(axis[i]) * v);
        EXPECT_NEAR(e.real(), sign[i], 1e-12) << i;
        for (int j = 0; j < i; ++j) EXPECT_FALSE(states[i].same_ray(states[j]));
    }
    auto angles = pauli_eigenstate_angles();
    ASSERT_EQ(angles.size(), 6u);
    for (int i = 0; i < 6; ++i) {
        auto prepared = basis_state(2, 0).apply(euler_unitary(angles[i]));
        EXPECT_TRUE(prepared.same_ray(states[i], 1e-10)) << i;
    }
}

TEST(AnglesForState, InvertsEulerPreparation) {
    RandomStream rng({37});
    for (int t = 0; t < 30; ++t) {
        auto psi = haar_random_state(rng);
        auto back = basis_state(2, 0).apply(euler_unitary(angles_for_state(psi)));
        EXPECT_TRUE(back.same_ray(psi, 1e-10));
    }
}

TEST(PartialTrace, PreservesTraceAndRecoversFactor) {
    RandomStream rng({41});
    auto a = DensityMatrix::from_pure(haar_random_state(rng));
    auto b = DensityMatrix::from_pure(haar_random_state(rng));
    auto ab = a.tensor(b);
    auto back = ab.partial_trace(2, 2, true);
    EXPECT_LT(max_abs_diff(back.matrix(), a.matrix()), 1e-12);
    EXPECT_NEAR(std::abs(back.matrix().trace() - cplx(1, 0)), 0, 1e-12);
}

TEST(QubitOrdering, FactorZeroIsLeftmost) {
    // X on qubit 0 of |00> gives |10>, index 2
    CircuitGate g{GateName::X, {0}};
    auto out = apply_circuit({g}, basis_state(4, 0));
    EXPECT_NEAR(out.overlap(basis_state(4, 2)), 1.0, 1e-15);
}

}  // namespace
