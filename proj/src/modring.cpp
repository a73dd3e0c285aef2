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

#include "sicalign/modring.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sicalign/errors.hpp"

namespace sic {

std::int64_t gcd(std::int64_t a, std::int64_t b) noexcept {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ModInt::ModInt(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
    if (modulus <= 0) {
        throw std::invalid_argument("ModInt: modulus must be positive, got " + std::to_string(modulus));
    }
    value_ = reduce(value, modulus);
}

void ModInt::check_same_modulus(const ModInt &o) const {
    if (o.modulus_ != modulus_) {
        throw std::invalid_argument("ModInt: mixed moduli " + std::to_string(modulus_) + " and " +
                                    std::to_string(o.modulus_));
    }
}

ModInt ModInt::operator+(const ModInt &o) const {
    check_same_modulus(o);
    return {value_ + o.value_, modulus_};
}

ModInt ModInt::operator-(const ModInt &o) const {
    check_same_modulus(o);
    return {value_ - o.value_, modulus_};
}

ModInt ModInt::operator*(const ModInt &o) const {
    check_same_modulus(o);
    // Values are < modulus, and moduli used here are far below 2^31.
    return {value_ * o.value_, modulus_};
}

ModInt ModInt::operator-() const { return {-value_, modulus_}; }

ModInt ModInt::pow(std::uint64_t e) const {
    ModInt result{1, modulus_};
    ModInt base = *this;
    while (e != 0) {
        if (e & 1U) {
            result = result * base;
        }
        base = base * base;
        e >>= 1U;
    }
    return result;
}

bool ModInt::is_invertible() const noexcept { return gcd(value_, modulus_) == 1; }

ModInt inv_mod(std::int64_t x, std::int64_t m) {
    if (m <= 0) {
        throw std::invalid_argument("inv_mod: modulus must be positive");
    }
    std::int64_t a = reduce(x, m);
    std::int64_t old_r = a, r = m;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1 && m != 1) {
        throw NotInvertible(std::to_string(x) + " is not invertible modulo " + std::to_string(m));
    }
    return {old_s, m};
}

cplx unit_root(std::int64_t k, std::int64_t m) noexcept {
    std::int64_t r = reduce(k, m);
    if (r == 0) {
        return {1.0, 0.0};
    }
    // Exact values on the axes keep products of phases free of drift.
    if (4 * r == m) {
        return {0.0, 1.0};
    }
    if (2 * r == m) {
        return {-1.0, 0.0};
    }
    if (4 * r == 3 * m) {
        return {0.0, -1.0};
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

cplx tau_power(std::int64_t k, std::int64_t n) noexcept {
    // tau_n = -exp(i pi/n) = exp(i pi (n+1)/n) = omega_{2n}^{n+1}
    std::int64_t two_n = 2 * n;
    return unit_root(reduce(k, two_n) * ((n + 1) % two_n), two_n);
}

RootOfUnity::RootOfUnity(std::int64_t order, std::int64_t exponent) : order_(order), exponent_(exponent) {
    if (order <= 0) {
        throw std::invalid_argument("RootOfUnity: order must be positive");
    }
}

cplx RootOfUnity::evaluate() const noexcept { return unit_root(exponent_, order_); }

RootOfUnity RootOfUnity::operator*(const RootOfUnity &o) const {
    if (o.order_ != order_) {
        throw std::invalid_argument("RootOfUnity: mixed orders");
    }
    return {order_, reduce(exponent_ + o.exponent_, order_)};
}

TauPhase::TauPhase(std::int64_t order, std::int64_t exponent) : order_(order), exponent_(exponent) {
    if (order <= 0) {
        throw std::invalid_argument("TauPhase: order must be positive");
    }
}

cplx TauPhase::evaluate() const noexcept { return tau_power(exponent_, order_); }

RootOfUnity TauPhase::as_root() const noexcept {
    std::int64_t two_n = 2 * order_;
    return {two_n, reduce(reduce(exponent_, two_n) * (order_ + 1), two_n)};
}

TauPhase TauPhase::operator*(const TauPhase &o) const {
    if (o.order_ != order_) {
        throw std::invalid_argument("TauPhase: mixed orders");
    }
    return {order_, reduce(exponent_ + o.exponent_, 2 * order_)};
}

namespace {
void require_coprime(std::int64_t n1, std::int64_t n2) {
    if (n1 <= 0 || n2 <= 0) {
        throw std::invalid_argument("CRT: factors must be positive");
    }
    if (gcd(n1, n2) != 1) {
        throw NotCoprime(std::to_string(n1) + " and " + std::to_string(n2) + " are not coprime");
    }
}
}  // namespace

CrtKappas crt_kappas(std::int64_t n1, std::int64_t n2) {
    require_coprime(n1, n2);
    return {inv_mod(n1, bar(n2)), inv_mod(n2, bar(n1))};
}

std::pair<ModInt, ModInt> crt_split(std::int64_t u, std::int64_t n1, std::int64_t n2) {
    require_coprime(n1, n2);
    return {ModInt{u, n1}, ModInt{u, n2}};
}

ModInt crt_join(std::int64_t u1, std::int64_t u2, std::int64_t n1, std::int64_t n2) {
    require_coprime(n1, n2);
    const std::int64_t m = n1 * n2;
    // e1 = 1 mod n1, 0 mod n2; e2 = 0 mod n1, 1 mod n2.
    const std::int64_t e1 = n2 * inv_mod(n2, n1).value();
    const std::int64_t e2 = n1 * inv_mod(n1, n2).value();
    return {reduce(u1, n1) * e1 + reduce(u2, n2) * e2, m};
}

}  // namespace sic
