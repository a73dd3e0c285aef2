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
#include <cstddef>
#include <span>
#include <string_view>

namespace sic::kernels {

using cplx = std::complex<double>;

/// Dense complex kernels used by the overlap and gradient evaluations.
/// Every entry point has a scalar reference and, on x86-64, an AVX2 variant
/// selected at runtime.
struct KernelSet {
    std::string_view name;
    /// sum_i x_i y_i
    cplx (*dotu)(const cplx *x, const cplx *y, std::size_t n);
    /// sum_i conj(x_i) y_i
    cplx (*dotc)(const cplx *x, const cplx *y, std::size_t n);
    /// out_i = conj(x_i) y_i
    void (*conj_mul)(const cplx *x, const cplx *y, cplx *out, std::size_t n);
    /// out_i += x_i y_i
    void (*mul_acc)(const cplx *x, const cplx *y, cplx *out, std::size_t n);
    /// y = W x for a row-major rows x cols matrix W.
    void (*matvec)(const cplx *W, const cplx *x, cplx *y, std::size_t rows, std::size_t cols);
};

const KernelSet &scalar_kernels() noexcept;

/// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelSet *avx2_kernels() noexcept;

/// The AVX2 set when available, otherwise the scalar set. Setting the
/// environment variable SICALIGN_KERNELS=scalar forces the reference path.
const KernelSet &active_kernels() noexcept;

// Span conveniences over the active set.

inline cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
    return active_kernels().dotc(x.data(), y.data(), x.size());
}

inline cplx dotu(std::span<const cplx> x, std::span<const cplx> y) {
    return active_kernels().dotu(x.data(), y.data(), x.size());
}

}  // namespace sic::kernels
