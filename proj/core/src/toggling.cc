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

#include "ddlab/toggling.h"

#include "ddlab/error.h"
#include "ddlab/quantum.h"

namespace ddlab {

namespace {

CMatrix random_hermitian(Eigen::Index dim, RandomStream &rng) {
    CMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx{rng.normal(), rng.normal()};
    }
    return 0.5 * (a + CMatrix(a.adjoint()));
}

}  // namespace

CMatrix toggling_frame_average(const std::vector<PulseLabel> &labels, const CMatrix &h_sb) {
    if (labels.empty()) {
        throw InvalidInput("toggling_frame_average: empty label list");
    }
    if (h_sb.rows() != h_sb.cols() || h_sb.rows() % 2 != 0) {
        throw InvalidInput("toggling_frame_average: coupling must act on qubit ⊗ bath");
    }
    Eigen::Index bath_dim = h_sb.rows() / 2;
    CMatrix id_b = CMatrix::Identity(bath_dim, bath_dim);
    CMatrix frame = CMatrix::Identity(2, 2);
    CMatrix sum = CMatrix::Zero(h_sb.rows(), h_sb.cols());
    for (const auto &l : labels) {
        frame = pauli(static_cast<int>(l.pauli)) * frame;
        CMatrix u = kron(frame, id_b);
        sum += u.adjoint() * h_sb * u;
    }
    return sum / static_cast<double>(labels.size());
}

double toggling_frame_first_order(const std::vector<PulseLabel> &labels, const CMatrix &h_sb) {
    return spectral_norm(toggling_frame_average(labels, h_sb));
}

double toggling_frame_first_order(const std::vector<PulseLabel> &labels, const SpinBathModel &bath) {
    bath.validate();
    return toggling_frame_first_order(labels, bath.coupling_hamiltonian());
}

CMatrix random_single_qubit_coupling(Eigen::Index bath_dim, RandomStream &rng) {
    CMatrix h = CMatrix::Zero(2 * bath_dim, 2 * bath_dim);
    for (int a = 1; a <= 3; ++a) h += kron(pauli(a), random_hermitian(bath_dim, rng));
    return h;
}

CMatrix random_axis_coupling(int axis, Eigen::Index bath_dim, RandomStream &rng) {
    if (axis < 1 || axis > 3) {
        throw InvalidInput("random_axis_coupling: axis must be 1, 2 or 3");
    }
    return kron(pauli(axis), random_hermitian(bath_dim, rng));
}

}  // namespace ddlab
