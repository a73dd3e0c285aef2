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

#include <cstdint>
#include <vector>

#include "sicalign/kernels.hpp"
#include "sicalign/weylheis.hpp"

namespace sic {

/// Evaluates all n^2 overlaps <phi|D_{a,b}|phi> of a vector with its
/// displaced copies and the frame-potential gradient built from them.
///
/// With r_{a,b} = sum_u conj(phi_{u+a}) phi_u omega^{bu} every overlap is
/// tau^{ab} r_{a,b}; each row r_{a,.} is a product of the fixed table
/// omega^{bu} with a shifted conjugate product, which is what the complex
/// kernels compute. Not thread-safe: concurrent callers need their own engine.
class OverlapEngine {
   public:
    explicit OverlapEngine(std::int64_t n, const kernels::KernelSet &k = kernels::active_kernels());

    std::int64_t dim() const noexcept { return n_; }

    /// r(a, b) without the tau^{ab} factor.
    void raw_overlaps(const ComplexVector &phi, ComplexMatrix &r);
    /// <phi|D_{a,b}|phi> for (a, b) in [0, n)^2.
    ComplexMatrix overlaps(const ComplexVector &phi);

    /// sum |<phi|D_{a,b}|phi>|^4 and its Wirtinger gradient with respect to
    /// conj(phi), phi held fixed (no normalization).
    double frame_potential(const ComplexVector &phi, ComplexVector *grad);

   private:
    std::int64_t n_;
    const kernels::KernelSet *k_;
    std::vector<kernels::cplx> table_;  // row-major omega^{bu}
    ComplexMatrix tau_;                 // tau^{ab}
    ComplexMatrix raw_;
    std::vector<kernels::cplx> shifted_, prod_, weights_, sums_;
};

}  // namespace sic
