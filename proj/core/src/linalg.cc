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

#include "ddlab/linalg.h"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace ddlab {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

CVector kron(const CVector &a, const CVector &b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

CMatrix kron_all(std::span<const CMatrix> factors) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (const auto &f : factors) {
        out = kron(out, f);
    }
    return out;
}

CMatrix embed_qubit_op(const CMatrix &op, int q, int n, Eigen::Index tail_dim) {
    Eigen::Index left = Eigen::Index{1} << q;
    Eigen::Index right = (Eigen::Index{1} << (n - q - 1)) * tail_dim;
    return kron(kron(CMatrix::Identity(left, left), op), CMatrix::Identity(right, right));
}

CMatrix partial_trace(const CMatrix &rho, Eigen::Index dim_a, Eigen::Index dim_b, bool keep_first) {
    if (keep_first) {
        CMatrix out = CMatrix::Zero(dim_a, dim_a);
        for (Eigen::Index i = 0; i < dim_a; ++i) {
            for (Eigen::Index j = 0; j < dim_a; ++j) {
                cplx acc = 0;
                for (Eigen::Index k = 0; k < dim_b; ++k) {
                    acc += rho(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = acc;
            }
        }
        return out;
    }
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index k = 0; k < dim_a; ++k) {
        out += rho.block(k * dim_b, k * dim_b, dim_b, dim_b);
    }
    return out;
}

double spectral_norm(const CMatrix &m) {
    if (m.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

double phase_aligned_diff(const CMatrix &a, const CMatrix &b) {
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(b(r, c)) == 0 || std::abs(a(r, c)) == 0) {
        return max_abs_diff(a, b);
    }
    cplx phase = a(r, c) / b(r, c);
    phase /= std::abs(phase);
    return max_abs_diff(a, phase * b);
}

bool is_power_of_two(Eigen::Index n) {
    return n > 0 && (n & (n - 1)) == 0;
}

CVector vectorize(const CMatrix &m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvectorize(const CVector &v, Eigen::Index dim) {
    return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

CMatrix sandwich_superop(const CMatrix &a, const CMatrix &b) {
    return kron(CMatrix(b.transpose()), a);
}

}  // namespace ddlab
