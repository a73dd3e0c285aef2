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

#include "sicalign/overlaps.hpp"

#include <algorithm>
#include <string>

#include "sicalign/errors.hpp"

namespace sic {

OverlapEngine::OverlapEngine(std::int64_t n, const kernels::KernelSet &k)
    : n_(n),
      k_(&k),
      table_(static_cast<std::size_t>(n * n)),
      tau_(n, n),
      raw_(n, n),
      shifted_(static_cast<std::size_t>(n)),
      prod_(static_cast<std::size_t>(n)),
      weights_(static_cast<std::size_t>(n)),
      sums_(static_cast<std::size_t>(n)) {
    if (n < 1) {
        throw DimensionError("OverlapEngine: dimension must be positive");
    }
    for (std::int64_t b = 0; b < n; ++b) {
        for (std::int64_t u = 0; u < n; ++u) {
            table_[static_cast<std::size_t>(b * n + u)] = unit_root(b * u % n, n);
        }
    }
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            tau_(a, b) = tau_power(a * b, n);
        }
    }
}

void OverlapEngine::raw_overlaps(const ComplexVector &phi, ComplexMatrix &r) {
    if (phi.size() != n_) {
        throw DimensionMismatch("OverlapEngine: vector length " + std::to_string(phi.size()) +
                                " does not match dimension " + std::to_string(n_));
    }
    r.resize(n_, n_);
    const auto n = static_cast<std::size_t>(n_);
    const kernels::cplx *p = phi.data();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t u = 0; u < n; ++u) {
            shifted_[u] = p[(u + a) % n];
        }
        k_->conj_mul(shifted_.data(), p, prod_.data(), n);
        k_->matvec(table_.data(), prod_.data(), sums_.data(), n, n);
        for (std::size_t b = 0; b < n; ++b) {
            r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sums_[b];
        }
    }
}

ComplexMatrix OverlapEngine::overlaps(const ComplexVector &phi) {
    raw_overlaps(phi, raw_);
    return raw_.cwiseProduct(tau_);
}

double OverlapEngine::frame_potential(const ComplexVector &phi, ComplexVector *grad) {
    raw_overlaps(phi, raw_);
    const auto n = static_cast<std::size_t>(n_);
    double value = 0.0;
    for (Eigen::Index a = 0; a < n_; ++a) {
        for (Eigen::Index b = 0; b < n_; ++b) {
            value += std::norm(raw_(a, b)) * std::norm(raw_(a, b));
        }
    }
    if (grad == nullptr) {
        return value;
    }
    // d/d conj(phi_v) = 4 sum_a phi_{v-a} s_a[v-a], s_a[k] = sum_b |r_ab|^2 conj(r_ab) omega^{bk}
    grad->setZero(n_);
    const kernels::cplx *p = phi.data();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const kernels::cplx r = raw_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            weights_[b] = std::norm(r) * std::conj(r);
        }
        k_->matvec(table_.data(), weights_.data(), sums_.data(), n, n);
        std::fill(prod_.begin(), prod_.end(), kernels::cplx{0.0, 0.0});
        k_->mul_acc(p, sums_.data(), prod_.data(), n);
        for (std::size_t k = 0; k < n; ++k) {
            (*grad)(static_cast<Eigen::Index>((k + a) % n)) += prod_[k];
        }
    }
    *grad *= 4.0;
    return value;
}

}  // namespace sic
