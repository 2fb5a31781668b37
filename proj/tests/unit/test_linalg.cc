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

#include <unsupported/Eigen/MatrixFunctions>

#include "ddlab/error.h"
#include "ddlab/linalg.h"
#include "ddlab/random.h"
#include "oracles.h"

namespace {

using namespace ddlab;

CMatrix random_matrix(Eigen::Index n, RandomStream &rng) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
    return m;
}

TEST(Linalg, KronMatchesLoopOracle) {
    RandomStream rng({1});
    CMatrix a = random_matrix(2, rng), b = random_matrix(3, rng);
    EXPECT_LT(max_abs_diff(kron(a, b), oracle::kron(a, b)), 1e-15);
}

TEST(Linalg, KronAllIsLeftToRight) {
    RandomStream rng({2});
    std::vector<CMatrix> f{random_matrix(2, rng), random_matrix(2, rng), random_matrix(2, rng)};
    CMatrix want = oracle::kron(oracle::kron(f[0], f[1]), f[2]);
    EXPECT_LT(max_abs_diff(kron_all(f), want), 1e-13);
}

TEST(Linalg, EmbedQubitOpPutsQubitZeroFirst) {
    CMatrix x = oracle::paulis(1), i2 = oracle::paulis(0);
    EXPECT_LT(max_abs_diff(embed_qubit_op(x, 0, 2), oracle::kron(x, i2)), 1e-15);
    EXPECT_LT(max_abs_diff(embed_qubit_op(x, 1, 2), oracle::kron(i2, x)), 1e-15);
    CMatrix tail = CMatrix::Identity(4, 4);
    EXPECT_LT(max_abs_diff(embed_qubit_op(x, 0, 1, 4), oracle::kron(x, tail)), 1e-15);
}

TEST(Linalg, PartialTraceOfProductState) {
    RandomStream rng({3});
    CMatrix a = random_matrix(2, rng);
    a = a * a.adjoint();
    a /= a.trace();
    CMatrix b = random_matrix(3, rng);
    b = b * b.adjoint();
    b /= b.trace();
    CMatrix ab = kron(a, b);
    EXPECT_LT(max_abs_diff(partial_trace(ab, 2, 3, true), a), 1e-14);
    EXPECT_LT(max_abs_diff(partial_trace(ab, 2, 3, false), b), 1e-14);
}

TEST(Linalg, SpectralNormAgreesWithPowerIteration) {
    RandomStream rng({4});
    for (int t = 0; t < 10; ++t) {
        CMatrix m = random_matrix(4, rng);
        EXPECT_NEAR(spectral_norm(m), oracle::spectral_norm(m), 1e-9 * oracle::spectral_norm(m));
    }
}

TEST(Linalg, VecIdentityForColumnStacking) {
    RandomStream rng({5});
    CMatrix a = random_matrix(3, rng), x = random_matrix(3, rng), b = random_matrix(3, rng);
    CVector lhs = vectorize(a * x * b);
    CVector rhs = sandwich_superop(a, b) * vectorize(x);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(max_abs_diff(unvectorize(vectorize(x), 3), x), 0.0 + 1e-300);
}

TEST(Linalg, EigenExpmMatchesTaylorOracle) {
    RandomStream rng({6});
    CMatrix m = random_matrix(4, rng) * 0.7;
    CMatrix e = m.exp();
    EXPECT_LT(max_abs_diff(e, oracle::expm(m)), 1e-11);
}

TEST(Linalg, PhaseAlignedDiffIgnoresGlobalPhase) {
    CMatrix x = oracle::paulis(1);
    EXPECT_LT(phase_aligned_diff(x, cplx(0, 1) * x), 1e-15);
    EXPECT_GT(phase_aligned_diff(x, oracle::paulis(3)), 0.5);
}

TEST(Linalg, PowerOfTwo) {
    EXPECT_TRUE(is_power_of_two(1));
    EXPECT_TRUE(is_power_of_two(16));
    EXPECT_FALSE(is_power_of_two(0));
    EXPECT_FALSE(is_power_of_two(6));
}

}  // namespace
