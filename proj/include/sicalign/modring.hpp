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

#include <complex>
#include <cstdint>
#include <utility>

namespace sic {

using cplx = std::complex<double>;

/// Reduces x into [0, m). m must be positive.
constexpr std::int64_t reduce(std::int64_t x, std::int64_t m) noexcept {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

/// n for odd n, 2n for even n. The symplectic group and the tau phases live
/// modulo this number.
constexpr std::int64_t bar(std::int64_t n) noexcept { return (n % 2 == 0) ? 2 * n : n; }

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept;

/// An exact residue modulo a positive integer.
class ModInt {
   public:
    ModInt(std::int64_t value, std::int64_t modulus);

    std::int64_t value() const noexcept { return value_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    ModInt operator+(const ModInt &o) const;
    ModInt operator-(const ModInt &o) const;
    ModInt operator*(const ModInt &o) const;
    ModInt operator-() const;
    ModInt pow(std::uint64_t e) const;
    bool is_invertible() const noexcept;

    bool operator==(const ModInt &o) const noexcept {
        return value_ == o.value_ && modulus_ == o.modulus_;
    }

   private:
    void check_same_modulus(const ModInt &o) const;
    std::int64_t value_;
    std::int64_t modulus_;
};

/// Multiplicative inverse of x modulo m (extended Euclid).
/// Throws NotInvertible when gcd(x, m) != 1.
ModInt inv_mod(std::int64_t x, std::int64_t m);

/// omega_order^exponent with omega_order = exp(2 pi i / order).
/// The exponent is stored exactly and reduced only at evaluation.
class RootOfUnity {
   public:
    RootOfUnity(std::int64_t order, std::int64_t exponent);

    std::int64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return exponent_; }
    cplx evaluate() const noexcept;

    RootOfUnity operator*(const RootOfUnity &o) const;

   private:
    std::int64_t order_;
    std::int64_t exponent_;
};

/// tau_n^exponent with tau_n = -exp(i pi / n). tau_n has order 2n
/// (n for odd n), and tau_n^2 = omega_n.
class TauPhase {
   public:
    TauPhase(std::int64_t order, std::int64_t exponent);

    std::int64_t order() const noexcept { return order_; }
    std::int64_t exponent() const noexcept { return exponent_; }
    cplx evaluate() const noexcept;
    /// The same phase written as a power of omega_{2n}.
    RootOfUnity as_root() const noexcept;

    TauPhase operator*(const TauPhase &o) const;

   private:
    std::int64_t order_;
    std::int64_t exponent_;
};

/// exp(2 pi i k / m) evaluated with k reduced into [0, m).
cplx unit_root(std::int64_t k, std::int64_t m) noexcept;

/// tau_n^k evaluated exactly from the exponent.
cplx tau_power(std::int64_t k, std::int64_t n) noexcept;

struct CrtKappas {
    ModInt kappa1;  // kappa1 * n1 = 1 mod bar(n2)
    ModInt kappa2;  // kappa2 * n2 = 1 mod bar(n1)
};

/// Throws NotCoprime when gcd(n1, n2) != 1.
CrtKappas crt_kappas(std::int64_t n1, std::int64_t n2);

/// u mod n1*n2 -> (u mod n1, u mod n2). Throws NotCoprime.
std::pair<ModInt, ModInt> crt_split(std::int64_t u, std::int64_t n1, std::int64_t n2);

/// Inverse of crt_split; returns the residue modulo n1*n2.
ModInt crt_join(std::int64_t u1, std::int64_t u2, std::int64_t n1, std::int64_t n2);

}  // namespace sic
