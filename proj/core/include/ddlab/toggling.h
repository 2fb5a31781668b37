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

#ifndef DDLAB_TOGGLING_H
#define DDLAB_TOGGLING_H

#include <vector>

#include "ddlab/linalg.h"
#include "ddlab/noise.h"
#include "ddlab/random.h"
#include "ddlab/sequences.h"

namespace ddlab {

/// (1/N) Σ_k U_k† H U_k with U_k = P_k ⋯ P_1 the pulses applied before free
/// interval k (a free interval follows every label). `h_sb` acts on
/// system ⊗ bath with the one-qubit system as the leftmost factor.
CMatrix toggling_frame_average(const std::vector<PulseLabel> &labels, const CMatrix &h_sb);

/// Spectral norm of toggling_frame_average.
double toggling_frame_first_order(const std::vector<PulseLabel> &labels, const CMatrix &h_sb);
double toggling_frame_first_order(const std::vector<PulseLabel> &labels, const SpinBathModel &bath);

/// Σ_α σ^α ⊗ B^α with independent random Hermitian B^α on `bath_dim`
/// levels (entries ~ N(0,1) before symmetrizing).
CMatrix random_single_qubit_coupling(Eigen::Index bath_dim, RandomStream &rng);

/// σ^axis ⊗ B with a random Hermitian B; axis ∈ {1, 2, 3}.
CMatrix random_axis_coupling(int axis, Eigen::Index bath_dim, RandomStream &rng);

}  // namespace ddlab

#endif
