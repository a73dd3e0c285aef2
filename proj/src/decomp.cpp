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

#include "sicalign/decomp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sicalign/errors.hpp"

namespace sic {

namespace {

void require_multiple_of_four(std::int64_t n, const char *who) {
    if (n < 4 || n % 4 != 0) {
        throw DimensionError(std::string(who) + ": dimension must be a positive multiple of 4, got " +
                             std::to_string(n));
    }
}

ComplexMatrix block_diag(const ComplexMatrix &A, const ComplexMatrix &B) {
    ComplexMatrix M = ComplexMatrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
    M.topLeftCorner(A.rows(), A.cols()) = A;
    M.bottomRightCorner(B.rows(), B.cols()) = B;
    return M;
}

ComplexMatrix identity(std::int64_t n) { return ComplexMatrix::Identity(n, n); }

}  // namespace

UnorthodoxGenerators unorthodox_generators(std::int64_t n) {
    require_multiple_of_four(n, "unorthodox_generators");
    const std::int64_t m = n / 4;
    const ComplexMatrix Xm = pauli_x(m);
    const ComplexMatrix Zm = pauli_z(m);
    const ComplexMatrix I = identity(m);
    UnorthodoxGenerators g{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
    auto at = [m](ComplexMatrix &M, int r, int c) { return M.block(r * m, c * m, m, m); };
    at(g.x, 0, 2) = Xm;
    at(g.x, 1, 3) = unit_root(1, 2 * m) * Xm;
    at(g.x, 2, 0) = I;
    at(g.x, 3, 1) = I;
    at(g.z, 0, 1) = I;
    at(g.z, 1, 0) = Zm;
    at(g.z, 2, 3) = unit_root(1, 4 * m) * I;
    at(g.z, 3, 2) = unit_root(1, 4 * m) * Zm;
    return g;
}

ComplexMatrix dft_matrix(std::int64_t s) {
    if (s < 1) {
        throw DimensionError("dft_matrix: size must be positive");
    }
    ComplexMatrix F(s, s);
    const double scale = 1.0 / std::sqrt(static_cast<double>(s));
    for (std::int64_t j = 0; j < s; ++j) {
        for (std::int64_t k = 0; k < s; ++k) {
            F(j, k) = scale * unit_root(j * k % s, s);
        }
    }
    return F;
}

ComplexMatrix interleave_matrix(std::int64_t s) {
    ComplexMatrix M = ComplexMatrix::Zero(2 * s, 2 * s);
    for (std::int64_t i = 0; i < s; ++i) {
        M(2 * i, i) = 1.0;
        M(2 * i + 1, s + i) = 1.0;
    }
    return M;
}

ComplexMatrix intertwiner(std::int64_t n) {
    require_multiple_of_four(n, "intertwiner");
    const std::int64_t m = n / 4;
    const ComplexMatrix Fm = dft_matrix(m);
    const ComplexMatrix A = dft_matrix(2 * m).adjoint() * interleave_matrix(m) * block_diag(Fm, Fm);
    return interleave_matrix(2 * m) * block_diag(A, A);
}

BlockDecomposition::BlockDecomposition(std::int64_t n) : n_(n), m_(n / 4) {
    require_multiple_of_four(n, "BlockDecomposition");
}

void BlockDecomposition::check(const ComplexMatrix &A) const {
    if (A.rows() != n_ || A.cols() != n_) {
        throw DimensionMismatch("BlockDecomposition: operator is not " + std::to_string(n_) + "x" +
                                std::to_string(n_));
    }
}

ComplexMatrix BlockDecomposition::projector(int j) const {
    if (j < 0 || j > 3) {
        throw std::out_of_range("BlockDecomposition: block index must lie in [0, 4)");
    }
    ComplexMatrix P = ComplexMatrix::Zero(n_, n_);
    P.block(j * m_, j * m_, m_, m_).setIdentity();
    return P;
}

ComplexMatrix BlockDecomposition::block(const ComplexMatrix &A, int j) const {
    check(A);
    if (j < 0 || j > 3) {
        throw std::out_of_range("BlockDecomposition: block index must lie in [0, 4)");
    }
    return A.block(j * m_, j * m_, m_, m_);
}

double BlockDecomposition::off_block_mass(const ComplexMatrix &A) const {
    check(A);
    double total = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r != c) {
                total += A.block(r * m_, c * m_, m_, m_).squaredNorm();
            }
        }
    }
    return std::sqrt(total);
}

EvenBlockResult even_block_structure(std::int64_t n, std::int64_t a, std::int64_t b, double tol) {
    const BlockDecomposition blocks{n};
    const std::int64_t m = blocks.block_size();
    const ComplexMatrix U = intertwiner(n);
    const ComplexMatrix rotated = U.adjoint() * displacement(n, 2 * a, 2 * b) * U;

    EvenBlockResult out;
    out.leakage = blocks.off_block_mass(rotated);
    if (out.leakage > tol) {
        throw BlockLeakage("D_{" + std::to_string(2 * a) + "," + std::to_string(2 * b) +
                           "} leaks off the block diagonal by " + std::to_string(out.leakage));
    }
    const double sign = ((a * b) % 2 == 0) ? 1.0 : -1.0;
    const ComplexMatrix target = sign * displacement(m, a, b);
    const std::array<std::int64_t, 4> exps{0, a, b, a + b};
    for (int j = 0; j < 4; ++j) {
        out.blocks[j] = blocks.block(rotated, j);
        const double r = (out.blocks[j] - unit_root(exps[j], 2 * m) * target).norm();
        out.block_residual = std::max(out.block_residual, r);
    }
    return out;
}

IntertwinerReport intertwiner_check(std::int64_t n, double tol, double leakage_tol) {
    IntertwinerReport rep;
    rep.n = n;
    rep.tol = tol;
    rep.leakage_tol = leakage_tol;
    const ComplexMatrix U = intertwiner(n);
    const UnorthodoxGenerators g = unorthodox_generators(n);
    rep.unitarity_residual = unitarity_residual(U);
    rep.x_residual = (U * g.x * U.adjoint() - pauli_x(n)).norm();
    rep.z_residual = (U * g.z * U.adjoint() - pauli_z(n)).norm();
    const double no_limit = std::numeric_limits<double>::infinity();
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            const EvenBlockResult r = even_block_structure(n, a, b, no_limit);
            rep.block_leakage = std::max(rep.block_leakage, r.leakage);
            rep.block_residual = std::max(rep.block_residual, r.block_residual);
        }
    }
    rep.pass = rep.unitarity_residual < tol && rep.x_residual < tol && rep.z_residual < tol &&
               rep.block_residual < tol && rep.block_leakage < leakage_tol;
    return rep;
}

TensorSplit::TensorSplit(std::int64_t n1, std::int64_t n2) : n1_(n1), n2_(n2) {
    if (n1 < 1 || n2 < 1) {
        throw DimensionError("TensorSplit: factors must be positive");
    }
    if (gcd(n1, n2) != 1) {
        throw NotCoprime(std::to_string(n1) + " and " + std::to_string(n2) + " are not coprime");
    }
    const std::int64_t m = n1 * n2;
    q_ = ComplexMatrix::Zero(m, m);
    for (std::int64_t u = 0; u < m; ++u) {
        q_((u % n1) * n2 + u % n2, u) = 1.0;
    }
}

ComplexMatrix TensorSplit::to_product(const ComplexMatrix &A) const { return q_ * A * q_.transpose(); }

ComplexMatrix TensorSplit::from_product(const ComplexMatrix &B) const { return q_.transpose() * B * q_; }

double split_displacement(std::int64_t n1, std::int64_t n2, std::int64_t a, std::int64_t b) {
    const TensorSplit split{n1, n2};
    const CrtKappas k = crt_kappas(n1, n2);
    const ComplexMatrix lhs = split.to_product(displacement(n1 * n2, a, b));
    const ComplexMatrix rhs =
        kron(displacement(n1, a, k.kappa2.value() * b), displacement(n2, a, k.kappa1.value() * b));
    return (lhs - rhs).norm();
}

SplitReport split_check(std::int64_t n1, std::int64_t n2, double tol) {
    SplitReport rep;
    rep.n1 = n1;
    rep.n2 = n2;
    rep.tol = tol;
    for (std::int64_t a = 0; a < n1 * n2; ++a) {
        for (std::int64_t b = 0; b < n1 * n2; ++b) {
            rep.max_residual = std::max(rep.max_residual, split_displacement(n1, n2, a, b));
        }
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

SubspaceSplittingReport subspace_splitting_check(std::int64_t d, double tol) {
    if (d < 4 || d % 2 != 0) {
        throw DimensionError("subspace_splitting_check: d must be even and at least 4, got " + std::to_string(d));
    }
    SubspaceSplittingReport rep;
    rep.d = d;
    rep.n = d * (d - 2);
    rep.n1 = d / 2;
    rep.n2 = (d - 2) / 2;
    const BlockDecomposition blocks{rep.n};
    const TensorSplit split{rep.n1, rep.n2};
    const ComplexMatrix U = intertwiner(rep.n);
    const ComplexMatrix I1 = identity(rep.n1);
    const ComplexMatrix I2 = identity(rep.n2);

    auto rotated = [&](std::int64_t a, std::int64_t b) {
        const ComplexMatrix R = U.adjoint() * displacement(rep.n, a, b) * U;
        const double leak = blocks.off_block_mass(R);
        rep.leakage = std::max(rep.leakage, leak);
        if (leak > tol) {
            throw BlockLeakage("D_{" + std::to_string(a) + "," + std::to_string(b) +
                               "} leaks off the block diagonal by " + std::to_string(leak));
        }
        return R;
    };

    for (std::int64_t a = 0; a < d; ++a) {
        for (std::int64_t b = 0; b < d; ++b) {
            const std::array<std::int64_t, 4> exps{0, a, b, a + b};
            if (a < d - 2 && b < d - 2) {
                const ComplexMatrix R = rotated(d * a, d * b);
                const ComplexMatrix core = displacement(rep.n2, a, b);
                for (int j = 0; j < 4; ++j) {
                    const ComplexMatrix target = kron(I1, unit_root(exps[j], 2 * rep.n2) * core);
                    rep.fine_residual =
                        std::max(rep.fine_residual, (split.to_product(blocks.block(R, j)) - target).norm());
                }
            }
            const ComplexMatrix R = rotated((d - 2) * a, (d - 2) * b);
            const ComplexMatrix core = displacement(rep.n1, -a, b);
            for (int j = 0; j < 4; ++j) {
                const ComplexMatrix target = kron(unit_root(exps[j], 2 * rep.n1) * core, I2);
                rep.coarse_residual =
                    std::max(rep.coarse_residual, (split.to_product(blocks.block(R, j)) - target).norm());
            }
        }
    }
    rep.pass = rep.fine_residual < tol && rep.coarse_residual < tol && rep.leakage < tol;
    return rep;
}

namespace {

void require_product_shape(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2, const char *who) {
    if (n1 < 1 || n2 < 1 || A.rows() != n1 * n2 || A.cols() != n1 * n2) {
        throw DimensionMismatch(std::string(who) + ": operator is not (n1 n2) x (n1 n2)");
    }
}

}  // namespace

ComplexMatrix twirl_left(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2) {
    require_product_shape(A, n1, n2, "twirl_left");
    const ComplexMatrix I2 = identity(n2);
    ComplexMatrix acc = ComplexMatrix::Zero(A.rows(), A.cols());
    for (std::int64_t a = 0; a < n1; ++a) {
        for (std::int64_t b = 0; b < n1; ++b) {
            const ComplexMatrix L = kron(displacement(n1, -a, b), I2);
            acc += L * A * L.adjoint();
        }
    }
    return acc / static_cast<double>(n1);
}

ComplexMatrix twirl_right(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2) {
    require_product_shape(A, n1, n2, "twirl_right");
    const ComplexMatrix I1 = identity(n1);
    ComplexMatrix acc = ComplexMatrix::Zero(A.rows(), A.cols());
    for (std::int64_t a = 0; a < n2; ++a) {
        for (std::int64_t b = 0; b < n2; ++b) {
            const ComplexMatrix R = kron(I1, displacement(n2, -a, b));
            acc += R * A * R.adjoint();
        }
    }
    return acc / static_cast<double>(n2);
}

ComplexMatrix partial_trace_first(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2) {
    require_product_shape(A, n1, n2, "partial_trace_first");
    ComplexMatrix out = ComplexMatrix::Zero(n2, n2);
    for (std::int64_t i = 0; i < n1; ++i) {
        out += A.block(i * n2, i * n2, n2, n2);
    }
    return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2) {
    require_product_shape(A, n1, n2, "partial_trace_second");
    ComplexMatrix out(n1, n1);
    for (std::int64_t i = 0; i < n1; ++i) {
        for (std::int64_t j = 0; j < n1; ++j) {
            out(i, j) = A.block(i * n2, j * n2, n2, n2).trace();
        }
    }
    return out;
}

}  // namespace sic
