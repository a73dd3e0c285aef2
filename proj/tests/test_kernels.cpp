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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sicalign/kernels.hpp"
#include "sicalign/overlaps.hpp"

using namespace sic;
using kernels::KernelSet;

namespace {

std::vector<cplx> random_buffer(oracle::Rng &rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx &x : v) {
        x = {rng.normal(), rng.normal()};
    }
    return v;
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// Naive loops serve as the reference for the scalar set; the AVX2 set is
// then compared against both.
void check_set(const KernelSet &k) {
    oracle::Rng rng{103};
    for (std::size_t n = 0; n <= 37; ++n) {
        const auto x = random_buffer(rng, n);
        const auto y = random_buffer(rng, n);
        cplx u{0.0, 0.0}, c{0.0, 0.0};
        std::vector<cplx> cm(n), acc = random_buffer(rng, n);
        std::vector<cplx> acc_expected = acc;
        for (std::size_t i = 0; i < n; ++i) {
            u += x[i] * y[i];
            c += std::conj(x[i]) * y[i];
            cm[i] = std::conj(x[i]) * y[i];
            acc_expected[i] += x[i] * y[i];
        }
        const double scale = 1e-13 * std::max<double>(1.0, static_cast<double>(n));
        EXPECT_LT(std::abs(k.dotu(x.data(), y.data(), n) - u), scale) << k.name << " n=" << n;
        EXPECT_LT(std::abs(k.dotc(x.data(), y.data(), n) - c), scale) << k.name << " n=" << n;
        std::vector<cplx> out(n);
        k.conj_mul(x.data(), y.data(), out.data(), n);
        EXPECT_LT(max_diff(out, cm), 1e-14);
        k.mul_acc(x.data(), y.data(), acc.data(), n);
        EXPECT_LT(max_diff(acc, acc_expected), 1e-14);
    }
    for (std::size_t rows : {1u, 2u, 3u, 7u, 8u}) {
        for (std::size_t cols : {1u, 2u, 5u, 8u, 13u}) {
            const auto W = random_buffer(rng, rows * cols);
            const auto x = random_buffer(rng, cols);
            std::vector<cplx> y(rows), expected(rows, cplx{0.0, 0.0});
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c2 = 0; c2 < cols; ++c2) {
                    expected[r] += W[r * cols + c2] * x[c2];
                }
            }
            k.matvec(W.data(), x.data(), y.data(), rows, cols);
            EXPECT_LT(max_diff(y, expected), 1e-13) << k.name << " " << rows << "x" << cols;
        }
    }
}

}  // namespace

TEST(Kernels, ScalarMatchesNaiveLoops) { check_set(kernels::scalar_kernels()); }

TEST(Kernels, Avx2MatchesNaiveLoops) {
    const KernelSet *k = kernels::avx2_kernels();
    if (k == nullptr) {
        GTEST_SKIP() << "AVX2 not available";
    }
    check_set(*k);
}

TEST(Kernels, Avx2AgreesWithScalarOnOddLengths) {
    const KernelSet *v = kernels::avx2_kernels();
    if (v == nullptr) {
        GTEST_SKIP() << "AVX2 not available";
    }
    const KernelSet &s = kernels::scalar_kernels();
    oracle::Rng rng{107};
    for (std::size_t n = 1; n <= 65; n += 2) {
        const auto x = random_buffer(rng, n);
        const auto y = random_buffer(rng, n);
        EXPECT_LT(std::abs(v->dotc(x.data(), y.data(), n) - s.dotc(x.data(), y.data(), n)), 1e-12);
        EXPECT_LT(std::abs(v->dotu(x.data(), y.data(), n) - s.dotu(x.data(), y.data(), n)), 1e-12);
        std::vector<cplx> a(n), b(n);
        v->conj_mul(x.data(), y.data(), a.data(), n);
        s.conj_mul(x.data(), y.data(), b.data(), n);
        EXPECT_LT(max_diff(a, b), 1e-15);
    }
}

TEST(Kernels, ActiveSetIsOneOfTheTwo) {
    const KernelSet &k = kernels::active_kernels();
    EXPECT_TRUE(k.name == "scalar" || k.name == "avx2");
    if (kernels::avx2_kernels() == nullptr) {
        EXPECT_EQ(k.name, "scalar");
    }
    const std::vector<cplx> x{{1.0, 2.0}, {3.0, -1.0}};
    EXPECT_EQ(kernels::dotc(x, x), cplx(15.0, 0.0));
}

TEST(OverlapEngine, MatchesOracleOverlaps) {
    oracle::Rng rng{109};
    for (std::int64_t n = 1; n <= 9; ++n) {
        OverlapEngine engine{n};
        const ComplexVector phi = rng.unit_vector(n);
        const ComplexMatrix q = engine.overlaps(phi);
        for (std::int64_t a = 0; a < n; ++a) {
            for (std::int64_t b = 0; b < n; ++b) {
                EXPECT_LT(std::abs(q(a, b) - phi.dot(oracle::displacement(n, a, b) * phi)), 1e-12);
            }
        }
    }
}

TEST(OverlapEngine, ScalarAndAvx2Agree) {
    const KernelSet *v = kernels::avx2_kernels();
    if (v == nullptr) {
        GTEST_SKIP() << "AVX2 not available";
    }
    oracle::Rng rng{113};
    for (std::int64_t n : {2, 3, 5, 8, 13, 24}) {
        OverlapEngine fast{n, *v};
        OverlapEngine ref{n, kernels::scalar_kernels()};
        const ComplexVector phi = rng.unit_vector(n);
        EXPECT_LT((fast.overlaps(phi) - ref.overlaps(phi)).norm(), 1e-13);
        ComplexVector gf, gr;
        const double ff = fast.frame_potential(phi, &gf);
        const double fr = ref.frame_potential(phi, &gr);
        EXPECT_NEAR(ff, fr, 1e-13);
        EXPECT_LT((gf - gr).norm(), 1e-12);
    }
}

TEST(OverlapEngine, GradientOfUnnormalizedPotential) {
    oracle::Rng rng{127};
    const double h = 1e-6;
    for (std::int64_t n = 2; n <= 6; ++n) {
        OverlapEngine engine{n};
        const ComplexVector phi = rng.unit_vector(n);
        ComplexVector g;
        engine.frame_potential(phi, &g);
        for (std::int64_t i = 0; i < n; ++i) {
            ComplexVector p = phi, m = phi;
            p(i) += h;
            m(i) -= h;
            const double fd = (engine.frame_potential(p, nullptr) - engine.frame_potential(m, nullptr)) / (2.0 * h);
            EXPECT_NEAR(fd, 2.0 * g(i).real(), 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}
