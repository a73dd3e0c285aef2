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

#include "sicalign/kernels.hpp"

namespace sic::kernels {

namespace {

cplx dotu_scalar(const cplx *x, const cplx *y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_scalar(const cplx *x, const cplx *y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

void conj_mul_scalar(const cplx *x, const cplx *y, cplx *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = {x[i].real() * y[i].real() + x[i].imag() * y[i].imag(),
                  x[i].real() * y[i].imag() - x[i].imag() * y[i].real()};
    }
}

void mul_acc_scalar(const cplx *x, const cplx *y, cplx *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] += cplx{x[i].real() * y[i].real() - x[i].imag() * y[i].imag(),
                       x[i].real() * y[i].imag() + x[i].imag() * y[i].real()};
    }
}

void matvec_scalar(const cplx *W, const cplx *x, cplx *y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dotu_scalar(W + r * cols, x, cols);
    }
}

}  // namespace

const KernelSet &scalar_kernels() noexcept {
    static const KernelSet set{"scalar", dotu_scalar, dotc_scalar, conj_mul_scalar, mul_acc_scalar, matvec_scalar};
    return set;
}

}  // namespace sic::kernels
