// Copyright 2026 The sicalign Authors
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

#include "sicalign/weylheis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sicalign/errors.hpp"

namespace sic {

namespace {

void require_dim(std::int64_t n) {
    if (n < 1) {
        throw DimensionError("dimension must be positive, got " + std::to_string(n));
    }
}

// Exponent of tau in the entry <u+a| D_{a,b} |u> = tau^{ab + 2bu}.
std::int64_t entry_exponent(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t u) {
    const std::int64_t two_n = 2 * n;
    const std::int64_t ab = reduce(a, two_n) * reduce(b, two_n) % two_n;
    const std::int64_t bu = reduce(b, n) * u % n;
    return (ab + 2 * bu) % two_n;
}

}  // namespace

int DisplacementIndex::translation_sign() const noexcept {
    if (dim % 2 != 0) {
        return 1;
    }
    const std::int64_t a0 = reduce(a, dim);
    const std::int64_t p = (a - a0) / dim;
    const std::int64_t b0 = reduce(b, dim);
    const std::int64_t q = (b - b0) / dim;
    // D_{a0+pn,b} = (-1)^{(n+1)bp} D_{a0,b};  D_{a0,b0+qn} = (-1)^{(n+1)a0 q} D_{a0,b0}
    const std::int64_t parity = (reduce(b, 2) * reduce(p, 2) + reduce(a0, 2) * reduce(q, 2)) % 2;
    return parity == 0 ? 1 : -1;
}

ComplexMatrix pauli_x(std::int64_t n) {
    require_dim(n);
    ComplexMatrix X = ComplexMatrix::Zero(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        X((u + 1) % n, u) = 1.0;
    }
    return X;
}

ComplexMatrix pauli_z(std::int64_t n) {
    require_dim(n);
    ComplexMatrix Z = ComplexMatrix::Zero(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        Z(u, u) = unit_root(u, n);
    }
    return Z;
}

ComplexMatrix displacement(const DisplacementIndex &idx) {
    const std::int64_t n = idx.dim;
    require_dim(n);
    ComplexMatrix D = ComplexMatrix::Zero(n, n);
    const std::int64_t shift = reduce(idx.a, n);
    for (std::int64_t u = 0; u < n; ++u) {
        D((u + shift) % n, u) = tau_power(entry_exponent(n, idx.a, idx.b, u), n);
    }
    return D;
}

ComplexVector apply_displacement(const DisplacementIndex &idx, const ComplexVector &v) {
    const std::int64_t n = idx.dim;
    if (v.size() != n) {
        throw DimensionMismatch("apply_displacement: vector length " + std::to_string(v.size()) +
                                " does not match dimension " + std::to_string(n));
    }
    ComplexVector out(n);
    const std::int64_t shift = reduce(idx.a, n);
    for (std::int64_t u = 0; u < n; ++u) {
        out((u + shift) % n) = tau_power(entry_exponent(n, idx.a, idx.b, u), n) * v(u);
    }
    return out;
}

std::int64_t commutation_exponent(const DisplacementIndex &first, const DisplacementIndex &second) noexcept {
    return first.b * second.a - first.a * second.b;
}

std::int64_t merge_check(const DisplacementIndex &first, const DisplacementIndex &second, double tol) {
    if (first.dim != second.dim) {
        throw DimensionMismatch("merge_check: operators act on different dimensions");
    }
    const std::int64_t n = first.dim;
    const std::int64_t e = first.b * second.a - first.a * second.b;
    const ComplexMatrix lhs = displacement(first) * displacement(second);
    const ComplexMatrix rhs =
        tau_power(e, n) * displacement(DisplacementIndex{first.a + second.a, first.b + second.b, n});
    const double residual = (lhs - rhs).norm();
    if (!(residual <= tol)) {
        throw MergeMismatch("merging rule violated by " + std::to_string(residual));
    }
    return e;
}

cplx displacement_trace(const DisplacementIndex &idx, const ComplexMatrix &A) {
    const std::int64_t n = idx.dim;
    if (A.rows() != n || A.cols() != n) {
        throw DimensionMismatch("displacement_trace: operator shape does not match dimension");
    }
    const std::int64_t shift = reduce(idx.a, n);
    cplx acc = 0.0;
    for (std::int64_t u = 0; u < n; ++u) {
        acc += tau_power(entry_exponent(n, idx.a, idx.b, u), n) * A(u, (u + shift) % n);
    }
    return acc;
}

CoefficientTable expand(const ComplexMatrix &A) {
    if (A.rows() != A.cols() || A.rows() == 0) {
        throw DimensionMismatch("expand: operator must be square and non-empty");
    }
    const std::int64_t n = A.rows();
    CoefficientTable table{n, ComplexMatrix(n, n)};
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            table.coeffs(a, b) = displacement_trace({-a, -b, n}, A) / static_cast<double>(n);
        }
    }
    return table;
}

ComplexMatrix CoefficientTable::reconstruct() const {
    ComplexMatrix A = ComplexMatrix::Zero(dim, dim);
    for (std::int64_t a = 0; a < dim; ++a) {
        for (std::int64_t b = 0; b < dim; ++b) {
            const cplx c = coeffs(a, b);
            if (c == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::int64_t u = 0; u < dim; ++u) {
                A((u + a) % dim, u) += c * tau_power(entry_exponent(dim, a, b, u), dim);
            }
        }
    }
    return A;
}

namespace {
template <typename Derived>
cplx reference_phase(const Eigen::MatrixBase<Derived> &A, const Eigen::MatrixBase<Derived> &B,
                     Eigen::Index &row, Eigen::Index &col) {
    B.cwiseAbs2().maxCoeff(&row, &col);
    const cplx b = B(row, col);
    const cplx a = A(row, col);
    if (std::abs(b) == 0.0 || std::abs(a) == 0.0) {
        return 1.0;
    }
    const cplx ratio = a / b;
    return ratio / std::abs(ratio);
}
}  // namespace

double phase_aligned_distance(const ComplexMatrix &A, const ComplexMatrix &B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) {
        throw DimensionMismatch("phase_aligned_distance: shape mismatch");
    }
    if (B.size() == 0) {
        return 0.0;
    }
    Eigen::Index r = 0, c = 0;
    const cplx phase = reference_phase(A, B, r, c);
    return (A - phase * B).norm();
}

double phase_aligned_distance(const ComplexVector &a, const ComplexVector &b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("phase_aligned_distance: length mismatch");
    }
    if (b.size() == 0) {
        return 0.0;
    }
    Eigen::Index r = 0, c = 0;
    const cplx phase = reference_phase(a, b, r, c);
    return (a - phase * b).norm();
}

double unitarity_residual(const ComplexMatrix &U) {
    return (U.adjoint() * U - ComplexMatrix::Identity(U.cols(), U.cols())).norm();
}

ComplexMatrix kron(const ComplexMatrix &A, const ComplexMatrix &B) {
    ComplexMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return K;
}

}  // namespace sic
