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

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace sic::kernels {

namespace {

// Two complex doubles per register, laid out [re0, im0, re1, im1].

inline __m256d load2(const cplx *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }

inline void store2(cplx *p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double *>(p), v); }

inline cplx reduce_pair(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    alignas(16) double out[2];
    _mm_store_pd(out, _mm_add_pd(lo, hi));
    return {out[0], out[1]};
}

cplx dotu_avx2(const cplx *x, const cplx *y, std::size_t n) {
    __m256d acc_direct = _mm256_setzero_pd();
    __m256d acc_cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d vy = load2(y + i);
        const __m256d y_re = _mm256_movedup_pd(vy);
        const __m256d y_im = _mm256_permute_pd(vy, 0xF);
        const __m256d x_swap = _mm256_permute_pd(vx, 0x5);
        acc_direct = _mm256_fmadd_pd(vx, y_re, acc_direct);   // [xr yr, xi yr]
        acc_cross = _mm256_fmadd_pd(x_swap, y_im, acc_cross);  // [xi yi, xr yi]
    }
    const cplx d = reduce_pair(acc_direct);
    const cplx c = reduce_pair(acc_cross);
    double re = d.real() - c.real();
    double im = d.imag() + c.imag();
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc_avx2(const cplx *x, const cplx *y, std::size_t n) {
    __m256d acc_direct = _mm256_setzero_pd();
    __m256d acc_cross = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d vy = load2(y + i);
        const __m256d x_re = _mm256_movedup_pd(vx);
        const __m256d x_im = _mm256_permute_pd(vx, 0xF);
        const __m256d y_swap = _mm256_permute_pd(vy, 0x5);
        acc_direct = _mm256_fmadd_pd(vy, x_re, acc_direct);   // [yr xr, yi xr]
        acc_cross = _mm256_fmadd_pd(y_swap, x_im, acc_cross);  // [yi xi, yr xi]
    }
    const cplx d = reduce_pair(acc_direct);
    const cplx c = reduce_pair(acc_cross);
    double re = d.real() + c.real();
    double im = d.imag() - c.imag();
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

void conj_mul_avx2(const cplx *x, const cplx *y, cplx *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d vy = load2(y + i);
        const __m256d x_re = _mm256_movedup_pd(vx);
        const __m256d x_im = _mm256_permute_pd(vx, 0xF);
        const __m256d y_swap = _mm256_permute_pd(vy, 0x5);
        // even lanes: yr xr + yi xi, odd lanes: yi xr - yr xi
        store2(out + i, _mm256_fmsubadd_pd(vy, x_re, _mm256_mul_pd(y_swap, x_im)));
    }
    for (; i < n; ++i) {
        out[i] = {x[i].real() * y[i].real() + x[i].imag() * y[i].imag(),
                  x[i].real() * y[i].imag() - x[i].imag() * y[i].real()};
    }
}

void mul_acc_avx2(const cplx *x, const cplx *y, cplx *out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = load2(x + i);
        const __m256d vy = load2(y + i);
        const __m256d y_re = _mm256_movedup_pd(vy);
        const __m256d y_im = _mm256_permute_pd(vy, 0xF);
        const __m256d x_swap = _mm256_permute_pd(vx, 0x5);
        const __m256d prod = _mm256_fmaddsub_pd(vx, y_re, _mm256_mul_pd(x_swap, y_im));
        store2(out + i, _mm256_add_pd(load2(out + i), prod));
    }
    for (; i < n; ++i) {
        out[i] += cplx{x[i].real() * y[i].real() - x[i].imag() * y[i].imag(),
                       x[i].real() * y[i].imag() + x[i].imag() * y[i].real()};
    }
}

void matvec_avx2(const cplx *W, const cplx *x, cplx *y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dotu_avx2(W + r * cols, x, cols);
    }
}

}  // namespace

const KernelSet *avx2_kernels() noexcept {
    static const KernelSet set{"avx2", dotu_avx2, dotc_avx2, conj_mul_avx2, mul_acc_avx2, matvec_avx2};
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &set : nullptr;
}

}  // namespace sic::kernels

#else

namespace sic::kernels {
const KernelSet *avx2_kernels() noexcept { return nullptr; }
}  // namespace sic::kernels

#endif
