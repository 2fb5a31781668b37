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

#ifndef DDLAB_LINALG_H
#define DDLAB_LINALG_H

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace ddlab {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Kronecker product a ⊗ b; factor `a` is the leftmost (most significant)
/// tensor factor.
CMatrix kron(const CMatrix &a, const CMatrix &b);
CVector kron(const CVector &a, const CVector &b);

/// Kronecker product of a list of factors, leftmost first.
CMatrix kron_all(std::span<const CMatrix> factors);

/// Embeds a single-qubit operator acting on qubit `q` of an `n`-qubit register.
CMatrix embed_qubit_op(const CMatrix &op, int q, int n, Eigen::Index tail_dim = 1);

/// Partial trace of a bipartite operator on dims (dim_a, dim_b).
/// `keep_first` selects which factor survives.
CMatrix partial_trace(const CMatrix &rho, Eigen::Index dim_a, Eigen::Index dim_b, bool keep_first);

/// Largest singular value.
double spectral_norm(const CMatrix &m);

/// max |a_ij - b_ij|.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// max |a_ij - e^{iφ} b_ij| with φ chosen to align the largest entry of `b`.
double phase_aligned_diff(const CMatrix &a, const CMatrix &b);

bool is_power_of_two(Eigen::Index n);

/// Column-stacking vectorization, vec(AXB) = (Bᵀ ⊗ A) vec(X).
CVector vectorize(const CMatrix &m);
CMatrix unvectorize(const CVector &v, Eigen::Index dim);

/// Superoperator of X ↦ A X B.
CMatrix sandwich_superop(const CMatrix &a, const CMatrix &b);

}  // namespace ddlab

#endif
