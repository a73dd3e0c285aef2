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

#include <array>
#include <cstdint>

#include "sicalign/weylheis.hpp"

namespace sic {

/// Shift and clock of the four-block representation of WH(n), 4 | n.
struct UnorthodoxGenerators {
    ComplexMatrix x;
    ComplexMatrix z;
};

/// Builds the generators blockwise from X_m, Z_m and the phases omega_{2m},
/// omega_{4m}, where m = n/4. Throws DimensionError unless 4 | n.
UnorthodoxGenerators unorthodox_generators(std::int64_t n);

/// Unitary U_n with U_n X U_n^dagger = X_n and U_n Z U_n^dagger = Z_n for the
/// four-block generators X, Z.
ComplexMatrix intertwiner(std::int64_t n);

/// Normalized DFT, entries omega_s^{jk} / sqrt(s).
ComplexMatrix dft_matrix(std::int64_t s);

/// Permutation of C^{2s} sending |i> to |2i> and |s+i> to |2i+1>.
ComplexMatrix interleave_matrix(std::int64_t s);

/// The four coordinate subspaces of C^n, 4 | n, each spanning m = n/4
/// consecutive basis vectors.
class BlockDecomposition {
   public:
    explicit BlockDecomposition(std::int64_t n);

    std::int64_t dim() const noexcept { return n_; }
    std::int64_t block_size() const noexcept { return m_; }

    /// Orthogonal projection onto subspace j in [0, 4).
    ComplexMatrix projector(int j) const;
    /// The m x m diagonal block (j, j) of A.
    ComplexMatrix block(const ComplexMatrix &A, int j) const;
    /// Frobenius norm of everything outside the four diagonal blocks.
    double off_block_mass(const ComplexMatrix &A) const;

   private:
    void check(const ComplexMatrix &A) const;

    std::int64_t n_;
    std::int64_t m_;
};

/// Diagonal blocks of D_{2a,2b} in the four-block representation together
/// with their deviation from (-1)^{ab} {1, w^a, w^b, w^{a+b}} D^{(m)}_{a,b}, w = omega_{2m}.
struct EvenBlockResult {
    std::array<ComplexMatrix, 4> blocks;
    double block_residual = 0.0;
    double leakage = 0.0;
};

/// Throws BlockLeakage when the off-diagonal mass exceeds tol.
EvenBlockResult even_block_structure(std::int64_t n, std::int64_t a, std::int64_t b, double tol = 1e-13);

/// Conjugation and block-structure certificate for the intertwiner.
struct IntertwinerReport {
    std::int64_t n = 0;
    double unitarity_residual = 0.0;
    double x_residual = 0.0;  // ||U X U^dagger - X_n||
    double z_residual = 0.0;  // ||U Z U^dagger - Z_n||
    double block_leakage = 0.0;   // worst off-block mass over D_{2a,2b}, (a, b) in [0, n)^2
    double block_residual = 0.0;  // worst diagonal-block deviation over the same range
    double tol = 0.0;
    double leakage_tol = 0.0;
    bool pass = false;
};

IntertwinerReport intertwiner_check(std::int64_t n, double tol = 1e-12, double leakage_tol = 1e-13);

/// Chinese-remainder factorization C^{n1 n2} -> C^{n1} (x) C^{n2}.
class TensorSplit {
   public:
    /// Throws NotCoprime.
    TensorSplit(std::int64_t n1, std::int64_t n2);

    std::int64_t first() const noexcept { return n1_; }
    std::int64_t second() const noexcept { return n2_; }
    std::int64_t dim() const noexcept { return n1_ * n2_; }

    /// Permutation Q with Q|u> = |u mod n1> (x) |u mod n2>.
    const ComplexMatrix &isometry() const noexcept { return q_; }
    /// Q A Q^T
    ComplexMatrix to_product(const ComplexMatrix &A) const;
    /// Q^T B Q
    ComplexMatrix from_product(const ComplexMatrix &B) const;

   private:
    std::int64_t n1_;
    std::int64_t n2_;
    ComplexMatrix q_;
};

/// ||Q D^{(n1 n2)}_{a,b} Q^T - D^{(n1)}_{a,k2 b} (x) D^{(n2)}_{a,k1 b}|| where
/// k1 = n1^{-1} mod bar(n2) and k2 = n2^{-1} mod bar(n1).
double split_displacement(std::int64_t n1, std::int64_t n2, std::int64_t a, std::int64_t b);

struct SplitReport {
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double max_residual = 0.0;  // split_displacement over (a, b) in [0, n1 n2)^2
    double tol = 0.0;
    bool pass = false;
};

SplitReport split_check(std::int64_t n1, std::int64_t n2, double tol = 1e-12);

/// Worst deviations of the block factorizations of D_{da,db} and
/// D_{(d-2)a,(d-2)b} in dimension n = d(d-2), four-block representation,
/// CRT ordering with n1 = d/2 and n2 = (d-2)/2.
struct SubspaceSplittingReport {
    std::int64_t d = 0;
    std::int64_t n = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    double fine_residual = 0.0;    // D_{da,db}: blocks 1 (x) w2^x D^{(n2)}_{a,b}
    double coarse_residual = 0.0;  // D_{(d-2)a,(d-2)b}: blocks w1^x D^{(n1)}_{-a,b} (x) 1
    double leakage = 0.0;
    bool pass = false;
};

/// Throws BlockLeakage if any operator leaves the block diagonal.
SubspaceSplittingReport subspace_splitting_check(std::int64_t d, double tol = 1e-12);

/// (1/n1) sum_{a,b} (D_{-a,b} (x) 1) A (D_{a,-b} (x) 1) on C^{n1} (x) C^{n2}.
ComplexMatrix twirl_left(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2);
/// (1/n2) sum_{a,b} (1 (x) D_{-a,b}) A (1 (x) D_{a,-b}).
ComplexMatrix twirl_right(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2);

/// tr_1 A, an n2 x n2 matrix.
ComplexMatrix partial_trace_first(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2);
/// tr_2 A, an n1 x n1 matrix.
ComplexMatrix partial_trace_second(const ComplexMatrix &A, std::int64_t n1, std::int64_t n2);

}  // namespace sic
