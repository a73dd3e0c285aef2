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

#include <Eigen/Dense>
#include <cstdint>

#include "sicalign/modring.hpp"

namespace sic {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default Frobenius tolerance for unitarity and operator identities.
inline constexpr double kDefaultTol = 1e-12;

/// Label (a, b) of the displacement operator D_{a,b} acting on C^n.
///
/// Indices are kept as given. For even n the operators are only
/// anti-periodic in the indices, so reducing (a, b) into [0, n)^2 changes
/// the operator by a sign; use translation_sign() when that matters.
struct DisplacementIndex {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t dim = 1;

    DisplacementIndex reduced() const noexcept { return {reduce(a, dim), reduce(b, dim), dim}; }
    DisplacementIndex negated() const noexcept { return {-a, -b, dim}; }
    /// s in {+1, -1} with D_{a,b} = s * D_{reduced()}.
    int translation_sign() const noexcept;
};

/// Expansion coefficients of an operator in the displacement basis,
/// coeffs(a, b) = tr(D_{-a,-b} A) / n for (a, b) in [0, n)^2.
struct CoefficientTable {
    std::int64_t dim = 0;
    ComplexMatrix coeffs;

    /// sum_{a,b} coeffs(a, b) D_{a,b}
    ComplexMatrix reconstruct() const;
};

/// Generalized Pauli shift X_n = sum_u |u+1><u|.
ComplexMatrix pauli_x(std::int64_t n);
/// Generalized Pauli clock Z_n = sum_u omega_n^u |u><u|.
ComplexMatrix pauli_z(std::int64_t n);

/// D_{a,b} = tau^{ab} X^a Z^b, assembled entrywise from exact phase exponents.
ComplexMatrix displacement(const DisplacementIndex &idx);
inline ComplexMatrix displacement(std::int64_t n, std::int64_t a, std::int64_t b) {
    return displacement(DisplacementIndex{a, b, n});
}

/// Applies D_{a,b} to a vector without forming the matrix.
ComplexVector apply_displacement(const DisplacementIndex &idx, const ComplexVector &v);

/// tau-exponent bk - al of the merging rule D_{a,b} D_{k,l} = tau^{bk-al} D_{a+k,b+l}.
/// The identity is also checked numerically; throws MergeMismatch if it fails
/// beyond tol, which can only mean a construction bug.
std::int64_t merge_check(const DisplacementIndex &first, const DisplacementIndex &second,
                         double tol = 1e-13);

/// The omega-exponent bk - al of the commutation rule
/// D_{a,b} D_{k,l} = omega^{bk-al} D_{k,l} D_{a,b}.
std::int64_t commutation_exponent(const DisplacementIndex &first, const DisplacementIndex &second) noexcept;

/// tr(D_{a,b} A) in O(n).
cplx displacement_trace(const DisplacementIndex &idx, const ComplexMatrix &A);

CoefficientTable expand(const ComplexMatrix &A);

// Small matrix helpers shared across modules.

/// Frobenius distance ||A - e^{i phi} B|| with phi chosen so that the
/// largest-modulus entry of B lines up with the matching entry of A.
double phase_aligned_distance(const ComplexMatrix &A, const ComplexMatrix &B);

/// Phase-aligned distance for vectors, using the largest-modulus entry of b.
double phase_aligned_distance(const ComplexVector &a, const ComplexVector &b);

/// ||U^dagger U - I||_F
double unitarity_residual(const ComplexMatrix &U);

ComplexMatrix kron(const ComplexMatrix &A, const ComplexMatrix &B);

}  // namespace sic
