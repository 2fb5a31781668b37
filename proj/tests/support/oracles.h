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

// Reference implementations used as test oracles. They are written
// independently of the library: dense loops, explicit matrices, no shared
// helpers beyond Eigen's storage types.

#ifndef DDLAB_TESTS_ORACLES_H
#define DDLAB_TESTS_ORACLES_H

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat paulis(int i);  // 0..3 written out entry by entry
Mat kron(const Mat &a, const Mat &b);
Mat dagger(const Mat &a);

/// Taylor series with scaling and squaring.
Mat expm(const Mat &a);

/// Classical RK4 on dρ/dt = −i[H, ρ] + Σ LρL† − ½{L†L, ρ}.
Mat lindblad_rk4(const Mat &rho, const Mat &h, const std::vector<Mat> &jumps, double t, int steps);

/// ‖(1/N) Σ_k U_k† H U_k‖ with U_k the product of the first k pulses;
/// labels are 'I','X','Y','Z'.
double toggling_norm(const std::string &labels, const Mat &h, int bath_dim);

/// Largest singular value by power iteration on A†A.
double spectral_norm(const Mat &a);

/// |⟨ψ|φ⟩|² through explicit sums; both vectors normalized.
double pure_overlap(const Eigen::VectorXcd &psi, const Eigen::VectorXcd &phi);

/// Joint unitary evolution of ψ_S ⊗ |bath⟩ for a sequence of instantaneous
/// ideal pulses separated by free intervals `tau` under H, returning the
/// reduced system density matrix.
Mat joint_unitary_run(const Eigen::VectorXcd &psi_s, const Eigen::VectorXcd &bath, const Mat &h,
                      const std::string &labels, double tau);

/// Ordinary least squares by normal equations.
void ols(const std::vector<double> &x, const std::vector<double> &y, double &slope, double &intercept);

}  // namespace oracle

#endif
