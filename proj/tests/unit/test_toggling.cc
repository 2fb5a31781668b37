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

#include "ddlab/error.h"
#include "ddlab/noise.h"
#include "ddlab/quantum.h"
#include "ddlab/sequences.h"
#include "ddlab/toggling.h"
#include "oracles.h"

namespace {

using namespace ddlab;

std::string labels_string(const std::vector<PulseLabel> &ls) {
    std::string s;
    for (auto &l : ls) s += pauli_char(l.pauli);
    return s;
}

TEST(Toggling, Xy4CancelsArbitrarySingleQubitCoupling) {
    RandomStream rng({1});
    auto labels = build_sequence({SequenceFamily::XY4, 1});
    for (int t = 0; t < 100; ++t) {
        CMatrix h = random_single_qubit_coupling(2, rng);
        EXPECT_LT(toggling_frame_first_order(labels, h), 1e-12);
        EXPECT_LT(oracle::toggling_norm("XYXY", h, 2), 1e-12);
    }
}

TEST(Toggling, GaFamiliesCancelArbitraryCoupling) {
    RandomStream rng({2});
    for (auto f : {SequenceFamily::GA8A, SequenceFamily::GA16A, SequenceFamily::GA32A}) {
        auto labels = build_sequence({f, 1});
        for (int t = 0; t < 20; ++t) {
            CMatrix h = random_single_qubit_coupling(4, rng);
            EXPECT_LT(toggling_frame_first_order(labels, h), 1e-12) << family_name(f);
        }
    }
}

TEST(Toggling, FreeLeavesCouplingIntact) {
    RandomStream rng({3});
    auto labels = build_sequence({SequenceFamily::FREE, 8});
    for (double gz : {1e-3, 0.2, 3.0}) {
        CMatrix b = CMatrix::Random(2, 2);
        b = 0.5 * (b + CMatrix(b.adjoint()));
        CMatrix h = gz * kron(pauli(3), b);
        EXPECT_NEAR(toggling_frame_first_order(labels, h), gz * spectral_norm(kron(pauli(3), b)), 1e-12);
    }
}

TEST(Toggling, ZiAxisSelectivity) {
    RandomStream rng({4});
    auto zi = build_sequence({SequenceFamily::ZI, 2});
    EXPECT_LT(toggling_frame_first_order(zi, random_axis_coupling(1, 2, rng)), 1e-12);
    EXPECT_LT(toggling_frame_first_order(zi, random_axis_coupling(2, 2, rng)), 1e-12);
    EXPECT_GT(toggling_frame_first_order(zi, random_axis_coupling(3, 2, rng)), 1e-3);
}

TEST(Toggling, XiAndYiUnderSigmaZ) {
    RandomStream rng({5});
    for (auto f : {SequenceFamily::XI, SequenceFamily::YI}) {
        auto labels = build_sequence({f, 2});
        EXPECT_LT(toggling_frame_first_order(labels, random_axis_coupling(3, 2, rng)), 1e-12);
    }
    auto xi = build_sequence({SequenceFamily::XI, 2});
    EXPECT_GT(toggling_frame_first_order(xi, random_axis_coupling(1, 2, rng)), 1e-3);
}

TEST(Toggling, AgreesWithOracleOnEverySequence) {
    RandomStream rng({6});
    for (auto f : {SequenceFamily::FREE, SequenceFamily::XY4, SequenceFamily::XI, SequenceFamily::YI,
                   SequenceFamily::ZI, SequenceFamily::GA8A, SequenceFamily::GA16A, SequenceFamily::GA32A}) {
        for (int reps : {1, 2, 3}) {
            auto labels = build_sequence({f, reps});
            CMatrix h = random_single_qubit_coupling(2, rng);
            EXPECT_NEAR(toggling_frame_first_order(labels, h), oracle::toggling_norm(labels_string(labels), h, 2),
                        1e-9)
                << family_name(f) << " x" << reps;
        }
    }
}

TEST(Toggling, SpinBathOverloadUsesCouplingOnly) {
    RandomStream rng({7});
    auto bath = SpinBathModel::random(2, 1e-3, 1e-2, rng);
    auto labels = build_sequence({SequenceFamily::FREE, 1});
    EXPECT_NEAR(toggling_frame_first_order(labels, bath), spectral_norm(bath.coupling_hamiltonian()), 1e-15);
    EXPECT_LT(toggling_frame_first_order(build_sequence({SequenceFamily::XY4, 1}), bath), 1e-15);
}

TEST(Toggling, RejectsBadInput) {
    EXPECT_THROW(toggling_frame_average({}, CMatrix::Identity(4, 4)), InvalidInput);
    EXPECT_THROW(toggling_frame_average(build_sequence({SequenceFamily::XY4, 1}), CMatrix::Identity(3, 3)),
                 InvalidInput);
    RandomStream rng({8});
    EXPECT_THROW(random_axis_coupling(0, 2, rng), InvalidInput);
}

}  // namespace
