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

#pragma once

// Independent reference computations and random generators shared by the
// unit tests. Nothing here calls into the code under test except for plain
// data types.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

/// Linear scan for y with x y = 1 mod m.
inline std::optional<std::int64_t> brute_inverse(std::int64_t x, std::int64_t m) {
    for (std::int64_t y = 0; y < m; ++y) {
        if (mod(x * y, m) == 1 % m) {
            return y;
        }
    }
    return std::nullopt;
}

inline Matrix shift(std::int64_t n) {
    Matrix X = Matrix::Zero(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        X((u + 1) % n, u) = 1.0;
    }
    return X;
}

inline Matrix clock(std::int64_t n) {
    Matrix Z = Matrix::Zero(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        Z(u, u) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(u) / static_cast<double>(n));
    }
    return Z;
}

inline Matrix matrix_power(const Matrix &M, std::int64_t e) {
    Matrix out = Matrix::Identity(M.rows(), M.cols());
    for (std::int64_t i = 0; i < e; ++i) {
        out = out * M;
    }
    return out;
}

/// tau^{ab} X^a Z^b by repeated multiplication, negative exponents through
/// the adjoint.
inline Matrix displacement(std::int64_t n, std::int64_t a, std::int64_t b) {
    const cplx tau = -std::polar(1.0, std::numbers::pi / static_cast<double>(n));
    const Matrix X = shift(n);
    const Matrix Z = clock(n);
    const Matrix Xa = a >= 0 ? matrix_power(X, a) : matrix_power(X.adjoint(), -a);
    const Matrix Zb = b >= 0 ? matrix_power(Z, b) : matrix_power(Z.adjoint(), -b);
    return std::pow(tau, static_cast<double>(a * b)) * Xa * Zb;
}

inline Matrix kron(const Matrix &A, const Matrix &B) {
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return K;
}

/// tr_1 A = sum_i (<i| (x) 1) A (|i> (x) 1), built from explicit isometries.
inline Matrix partial_trace_first(const Matrix &A, std::int64_t n1, std::int64_t n2) {
    Matrix out = Matrix::Zero(n2, n2);
    const Matrix I2 = Matrix::Identity(n2, n2);
    for (std::int64_t i = 0; i < n1; ++i) {
        Matrix e = Matrix::Zero(n1, 1);
        e(i, 0) = 1.0;
        const Matrix W = kron(e, I2);
        out += W.adjoint() * A * W;
    }
    return out;
}

/// tr_2 A = sum_j (1 (x) <j|) A (1 (x) |j>).
inline Matrix partial_trace_second(const Matrix &A, std::int64_t n1, std::int64_t n2) {
    Matrix out = Matrix::Zero(n1, n1);
    const Matrix I1 = Matrix::Identity(n1, n1);
    for (std::int64_t j = 0; j < n2; ++j) {
        Matrix e = Matrix::Zero(n2, 1);
        e(j, 0) = 1.0;
        const Matrix W = kron(I1, e);
        out += W.adjoint() * A * W;
    }
    return out;
}

/// min over phases of ||A - e^{i phi} B||, using the optimal phase
/// arg tr(B^dagger A).
inline double phase_distance(const Matrix &A, const Matrix &B) {
    const cplx overlap = (B.adjoint() * A).trace();
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    return (A - phase * B).norm();
}

/// Sorted eigenvalues of a Hermitian matrix.
inline Eigen::VectorXd spectrum(const Matrix &H) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// Generators.

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double normal() { return normal_(gen_); }
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {  // inclusive
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }

    Vector unit_vector(std::int64_t n) {
        Vector v(n);
        for (std::int64_t i = 0; i < n; ++i) {
            v(i) = cplx{normal(), normal()};
        }
        return v.normalized();
    }

    Matrix matrix(std::int64_t r, std::int64_t c) {
        Matrix M(r, c);
        for (std::int64_t i = 0; i < r; ++i) {
            for (std::int64_t j = 0; j < c; ++j) {
                M(i, j) = cplx{normal(), normal()};
            }
        }
        return M;
    }

    /// Uniform over SL(2, Z_m) by rejection.
    std::array<std::int64_t, 4> symplectic(std::int64_t m) {
        for (;;) {
            std::array<std::int64_t, 4> F{uniform(0, m - 1), uniform(0, m - 1), uniform(0, m - 1), uniform(0, m - 1)};
            if (mod(F[0] * F[3] - F[1] * F[2], m) == 1 % m) {
                return F;
            }
        }
    }

   private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace oracle
