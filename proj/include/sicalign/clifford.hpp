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
#include <string>
#include <utility>
#include <vector>

#include "sicalign/modring.hpp"
#include "sicalign/weylheis.hpp"

namespace sic {

/// Element of SL(2, Z_nbar) acting on displacement labels of C^n, where
/// nbar = bar(n). The determinant is checked at construction.
class SymplecticMatrix {
   public:
    SymplecticMatrix(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t delta,
                     std::int64_t dim);

    static SymplecticMatrix identity(std::int64_t dim);
    /// [[0, -1], [1, 0]]
    static SymplecticMatrix fourier(std::int64_t dim);

    const ModInt &alpha() const noexcept { return alpha_; }
    const ModInt &beta() const noexcept { return beta_; }
    const ModInt &gamma() const noexcept { return gamma_; }
    const ModInt &delta() const noexcept { return delta_; }
    std::int64_t dim() const noexcept { return dim_; }
    std::int64_t modulus() const noexcept { return alpha_.modulus(); }

    /// F (a, b)^T with entries reduced modulo nbar. Well defined as a
    /// displacement label because D is periodic modulo nbar.
    DisplacementIndex apply(const DisplacementIndex &idx) const;

    SymplecticMatrix operator*(const SymplecticMatrix &o) const;
    SymplecticMatrix inverse() const;
    bool operator==(const SymplecticMatrix &o) const noexcept;

    std::array<std::int64_t, 4> entries() const noexcept {
        return {alpha_.value(), beta_.value(), gamma_.value(), delta_.value()};
    }

   private:
    ModInt alpha_, beta_, gamma_, delta_;
    std::int64_t dim_;
};

/// True iff beta is invertible modulo nbar.
bool is_prime(const SymplecticMatrix &F);

/// F = first * second with both factors prime. When F is already prime the
/// decomposition is a passthrough: first = F, second = identity, and
/// passthrough = true.
struct PrimeDecomposition {
    SymplecticMatrix first;
    SymplecticMatrix second;
    bool passthrough = false;
};

/// Canonical decomposition. A prime F passes through unless force_split is
/// set. Otherwise G = [[s, -1], [1, 0]] with the smallest s in [0, nbar)
/// making alpha + beta s invertible, and the result is (F G^{-1}, G).
PrimeDecomposition prime_decompose(const SymplecticMatrix &F, bool force_split = false);

/// The explicit formula for V_F, valid only for prime F.
ComplexMatrix prime_symplectic_unitary(const SymplecticMatrix &F);

/// V_F built from the canonical prime decomposition.
ComplexMatrix symplectic_unitary(const SymplecticMatrix &F);

/// max over (a,b) in [0,n)^2 of the phase-aligned distance between
/// V D_{a,b} V^dagger and D_{F(a,b)}.
double covariance_check(const ComplexMatrix &V, const SymplecticMatrix &F);

/// P = sum_u |-u><u|
ComplexMatrix parity(std::int64_t n);

/// P_{a,b} = D_{a,b} P
ComplexMatrix displaced_parity(const DisplacementIndex &idx);

/// Trace and +1/-1 eigenvalue multiplicities of a displaced parity operator,
/// computed numerically (Hermitian eigensolver, threshold 0.5).
struct ParityClass {
    DisplacementIndex index;
    int trace_value = 0;
    double trace_residual = 0.0;  // |tr - round(tr)|
    std::pair<int, int> spectrum{0, 0};
};
ParityClass classify_parity(const DisplacementIndex &idx);

/// Frobenius distance between P and the weighted sum of displacement
/// operators that expands it.
double parity_expansion_check(std::int64_t n);

struct ParityAuditCase {
    std::string id;
    std::array<std::int64_t, 4> F{};  // alpha, beta, gamma, delta in [0, nbar)
    std::int64_t k = 0;
    std::int64_t l = 0;
    bool found = false;   // candidate appears in the exhaustive scan
    int sign = 0;         // e^{i theta} D_{k,l} V_F = sign * P
    cplx forced_phase{0.0, 0.0};
    double residual = 0.0;
    bool pass = false;
};

struct ParityAuditReport {
    std::int64_t n = 0;
    std::vector<ParityAuditCase> cases;
    std::int64_t candidates_scanned = 0;
    std::int64_t extra_candidates = 0;  // parity candidates outside the expected table
    double max_residual = 0.0;
    bool pass = false;

    /// One line per case: id, F entries, k, l, residual, verdict.
    std::string to_text() const;
    void require() const;
};

/// Expected (alpha, beta, gamma, delta, k, l) rows for the decomposition of a
/// parity operator as e^{i theta} D_{k,l} V_F: one row for odd n, eight for even n.
std::vector<ParityAuditCase> parity_table(std::int64_t n);

/// Scans all of SL(2, Z_nbar) x Z_n^2 for Clifford operators D_{k,l} V_F that
/// conjugate D_{1,0} to D_{-1,0} and D_{0,1} to D_{0,-1}, fixes the phase by
/// the involution condition and compares each with +-P. The report's
/// require() throws AuditFailure when a case is missing or fails, or when an
/// unexpected candidate turns up.
ParityAuditReport parity_uniqueness_audit(std::int64_t n, std::int64_t cap = 8, double tol = 1e-10);

/// F_b = [[1-d, n], [n, 1-d+n]] modulo 2n with n = d(d-2), d even >= 4.
SymplecticMatrix symmetry_matrix(std::int64_t d);

/// Every element of SL(2, Z_nbar) for the given dimension.
std::vector<SymplecticMatrix> enumerate_symplectic(std::int64_t n);

}  // namespace sic
