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

#include <set>

#include "oracles.hpp"
#include "sicalign/clifford.hpp"
#include "sicalign/errors.hpp"

using namespace sic;

namespace {

std::array<std::int64_t, 4> mul(const std::array<std::int64_t, 4> &x, const std::array<std::int64_t, 4> &y,
                                std::int64_t m) {
    return {oracle::mod(x[0] * y[0] + x[1] * y[2], m), oracle::mod(x[0] * y[1] + x[1] * y[3], m),
            oracle::mod(x[2] * y[0] + x[3] * y[2], m), oracle::mod(x[2] * y[1] + x[3] * y[3], m)};
}

// The explicit formula written out independently of the library.
oracle::Matrix formula_unitary(std::int64_t n, const std::array<std::int64_t, 4> &F) {
    const std::int64_t m = bar(n);
    const std::int64_t beta_inv = oracle::brute_inverse(F[1], m).value();
    const oracle::cplx tau = -std::polar(1.0, std::numbers::pi / static_cast<double>(n));
    oracle::Matrix V(n, n);
    for (std::int64_t u = 0; u < n; ++u) {
        for (std::int64_t v = 0; v < n; ++v) {
            const std::int64_t e = oracle::mod(beta_inv * (F[0] * v * v - 2 * u * v + F[3] * u * u), m);
            V(u, v) = std::pow(tau, static_cast<double>(e)) / std::sqrt(static_cast<double>(n));
        }
    }
    return V;
}

SymplecticMatrix make(const std::array<std::int64_t, 4> &F, std::int64_t n) { return {F[0], F[1], F[2], F[3], n}; }

}  // namespace

TEST(SymplecticMatrix, ChecksDeterminant) {
    EXPECT_THROW(SymplecticMatrix(1, 1, 1, 1, 3), NotSymplectic);
    EXPECT_NO_THROW(SymplecticMatrix(-3, 8, 8, 5, 8));
    const SymplecticMatrix F{-1, 0, 0, -1, 4};
    EXPECT_EQ(F.modulus(), 8);
    EXPECT_EQ(F.entries(), (std::array<std::int64_t, 4>{7, 0, 0, 7}));
}

TEST(SymplecticMatrix, GroupOperations) {
    oracle::Rng rng{21};
    for (std::int64_t n = 2; n <= 12; ++n) {
        const std::int64_t m = bar(n);
        for (int t = 0; t < 20; ++t) {
            const auto x = rng.symplectic(m);
            const auto y = rng.symplectic(m);
            EXPECT_EQ((make(x, n) * make(y, n)).entries(), mul(x, y, m));
            EXPECT_EQ(make(x, n) * make(x, n).inverse(), SymplecticMatrix::identity(n));
            const DisplacementIndex idx{rng.uniform(0, n - 1), rng.uniform(0, n - 1), n};
            const DisplacementIndex img = make(x, n).apply(idx);
            EXPECT_EQ(img.a, oracle::mod(x[0] * idx.a + x[1] * idx.b, m));
            EXPECT_EQ(img.b, oracle::mod(x[2] * idx.a + x[3] * idx.b, m));
        }
    }
}

TEST(IsPrime, Examples) {
    for (std::int64_t n = 2; n <= 9; ++n) {
        EXPECT_TRUE(is_prime(SymplecticMatrix::fourier(n)));
    }
    EXPECT_FALSE(is_prime(SymplecticMatrix(1, 0, 1, 1, 4)));
    EXPECT_FALSE(is_prime(SymplecticMatrix(-3, 8, 8, 5, 8)));
}

TEST(PrimeDecompose, PassthroughForPrime) {
    const SymplecticMatrix J = SymplecticMatrix::fourier(6);
    const PrimeDecomposition p = prime_decompose(J);
    EXPECT_TRUE(p.passthrough);
    EXPECT_EQ(p.first, J);
    EXPECT_EQ(p.second, SymplecticMatrix::identity(6));
}

TEST(PrimeDecompose, CanonicalSplitOfLowerTriangular) {
    const SymplecticMatrix F{1, 0, 1, 1, 4};
    const PrimeDecomposition p = prime_decompose(F);
    EXPECT_FALSE(p.passthrough);
    // alpha + beta s = 1 is invertible already at s = 0.
    EXPECT_EQ(p.second, SymplecticMatrix(0, -1, 1, 0, 4));
    EXPECT_EQ(p.first * p.second, F);
    EXPECT_TRUE(is_prime(p.first));
    EXPECT_TRUE(is_prime(p.second));
}

TEST(PrimeDecompose, SymmetryMatrixFactorization) {
    const SymplecticMatrix Fb = symmetry_matrix(4);
    const SymplecticMatrix F1{-8, -3, -5, 8, 8};
    const SymplecticMatrix F2 = SymplecticMatrix::fourier(8);
    EXPECT_EQ(F1 * F2, Fb);
    EXPECT_TRUE(is_prime(F1));
    EXPECT_TRUE(is_prime(F2));
    const ComplexMatrix printed = prime_symplectic_unitary(F1) * prime_symplectic_unitary(F2);
    EXPECT_LT(oracle::phase_distance(symplectic_unitary(Fb), printed), 1e-11);
}

TEST(PrimeDecompose, RandomMatricesFactorIntoPrimes) {
    oracle::Rng rng{23};
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (int t = 0; t < 30; ++t) {
            const SymplecticMatrix F = make(rng.symplectic(bar(n)), n);
            for (bool force : {false, true}) {
                const PrimeDecomposition p = prime_decompose(F, force);
                EXPECT_EQ(p.first * p.second, F);
                EXPECT_TRUE(is_prime(p.first));
                EXPECT_EQ(p.passthrough, is_prime(F) && !force);
                if (p.passthrough) {
                    EXPECT_EQ(p.second, SymplecticMatrix::identity(n));
                } else {
                    EXPECT_TRUE(is_prime(p.second));
                }
                EXPECT_EQ(prime_decompose(F, force).first, p.first);
            }
        }
    }
}

TEST(SymplecticUnitary, FormulaMatchesOracle) {
    oracle::Rng rng{29};
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (int t = 0; t < 10; ++t) {
            const auto F = rng.symplectic(bar(n));
            if (!oracle::brute_inverse(F[1], bar(n))) {
                continue;
            }
            EXPECT_LT((prime_symplectic_unitary(make(F, n)) - formula_unitary(n, F)).norm(), 1e-11);
        }
    }
    EXPECT_THROW(prime_symplectic_unitary(SymplecticMatrix::identity(4)), std::invalid_argument);
}

TEST(SymplecticUnitary, FourierSquaredIsParity) {
    for (std::int64_t n : {3, 5, 7, 9}) {
        const ComplexMatrix V = symplectic_unitary(SymplecticMatrix::fourier(n));
        EXPECT_LT(oracle::phase_distance(V * V, parity(n)), 1e-12);
    }
}

TEST(SymplecticUnitary, MinusIdentityIsParity) {
    EXPECT_LT(oracle::phase_distance(symplectic_unitary(SymplecticMatrix(-1, 0, 0, -1, 5)), parity(5)), 1e-12);
}

TEST(SymplecticUnitary, CovarianceOnRandomMatrices) {
    oracle::Rng rng{31};
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (int t = 0; t < 8; ++t) {
            const SymplecticMatrix F = make(rng.symplectic(bar(n)), n);
            const ComplexMatrix V = symplectic_unitary(F);
            EXPECT_LT(unitarity_residual(V), 1e-12);
            EXPECT_LT(covariance_check(V, F), 1e-10) << "n=" << n;
            // Independent recheck with the oracle displacements.
            for (std::int64_t a = 0; a < n; ++a) {
                const DisplacementIndex img = F.apply({a, 1, n});
                EXPECT_LT(oracle::phase_distance(V * oracle::displacement(n, a, 1) * V.adjoint(),
                                                 oracle::displacement(n, img.a, img.b)),
                          1e-9);
            }
        }
    }
}

TEST(SymplecticUnitary, DirectAgreesWithForcedSplit) {
    oracle::Rng rng{37};
    for (std::int64_t n = 2; n <= 12; ++n) {
        for (int t = 0; t < 10; ++t) {
            const SymplecticMatrix F = make(rng.symplectic(bar(n)), n);
            if (!is_prime(F)) {
                continue;
            }
            const PrimeDecomposition p = prime_decompose(F, true);
            const ComplexMatrix split = prime_symplectic_unitary(p.first) * prime_symplectic_unitary(p.second);
            EXPECT_LT(oracle::phase_distance(prime_symplectic_unitary(F), split), 1e-11);
        }
    }
}

TEST(CovarianceCheck, NegativeControl) {
    for (std::int64_t n = 2; n <= 8; ++n) {
        EXPECT_GE(covariance_check(ComplexMatrix::Identity(n, n), SymplecticMatrix::fourier(n)), 1.0);
    }
}

TEST(Parity, Examples) {
    EXPECT_EQ(parity(2), ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(parity(3).trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(parity(4).trace().real(), 2.0, 1e-15);
    EXPECT_EQ(parity(1), ComplexMatrix::Identity(1, 1));
}

TEST(Parity, ConjugatesDisplacementsToInverses) {
    for (std::int64_t n = 1; n <= 12; ++n) {
        const ComplexMatrix P = parity(n);
        for (std::int64_t a = 0; a < n; ++a) {
            for (std::int64_t b = 0; b < n; ++b) {
                EXPECT_LT((P * displacement(n, a, b) * P - displacement(n, -a, -b)).norm(), 1e-13);
                const ComplexMatrix Pab = displaced_parity({a, b, n});
                EXPECT_LT((Pab * Pab - ComplexMatrix::Identity(n, n)).norm(), 1e-13);
            }
        }
    }
}

TEST(Parity, EvenDisplacedParityIsConjugate) {
    for (std::int64_t n = 2; n <= 12; n += 2) {
        for (std::int64_t k = 0; k < n; ++k) {
            for (std::int64_t l = 0; l < n; ++l) {
                const ComplexMatrix rhs = displacement(n, k, l) * parity(n) * displacement(n, -k, -l);
                EXPECT_LT((displaced_parity({2 * k, 2 * l, n}) - rhs).norm(), 1e-12);
            }
        }
    }
}

TEST(ClassifyParity, Examples) {
    for (std::int64_t a = 0; a < 5; ++a) {
        for (std::int64_t b = 0; b < 5; ++b) {
            EXPECT_EQ(classify_parity({a, b, 5}).trace_value, 1);
        }
    }
    EXPECT_EQ(classify_parity({1, 1, 4}).trace_value, 0);
    const ParityClass c = classify_parity({0, 0, 4});
    EXPECT_EQ(c.trace_value, 2);
    EXPECT_EQ(c.spectrum, (std::pair<int, int>{3, 1}));
}

// Trace and spectrum against the closed forms, with the spectrum taken from
// an independent eigensolve.
TEST(ClassifyParity, TracesAndMultiplicities) {
    for (std::int64_t n = 1; n <= 12; ++n) {
        for (std::int64_t a = 0; a < n; ++a) {
            for (std::int64_t b = 0; b < n; ++b) {
                const int expected = n % 2 == 1 ? 1 : 1 - (((a + 1) * (b + 1)) % 2 == 0 ? 1 : -1);
                const ParityClass c = classify_parity({a, b, n});
                EXPECT_EQ(c.trace_value, expected);
                EXPECT_LT(c.trace_residual, 1e-10);
                const int up = static_cast<int>((n + expected) / 2);
                EXPECT_EQ(c.spectrum, (std::pair<int, int>{up, static_cast<int>(n) - up}));
                const Eigen::VectorXd ev = oracle::spectrum(oracle::displacement(n, a, b) * parity(n));
                EXPECT_EQ((ev.array() > 0.5).count(), up);
            }
        }
    }
}

TEST(ParityExpansion, AllSmallDimensions) {
    for (std::int64_t n = 1; n <= 12; ++n) {
        EXPECT_LT(parity_expansion_check(n), 1e-13) << "n=" << n;
    }
}

TEST(ParityAudit, OddDimensions) {
    for (std::int64_t n : {3, 5}) {
        const ParityAuditReport rep = parity_uniqueness_audit(n);
        ASSERT_EQ(rep.cases.size(), 1u);
        const ParityAuditCase &c = rep.cases.front();
        EXPECT_EQ(c.F, (std::array<std::int64_t, 4>{n - 1, 0, 0, n - 1}));
        EXPECT_EQ(c.k, 0);
        EXPECT_EQ(c.l, 0);
        EXPECT_TRUE(c.found);
        EXPECT_LT(c.residual, 1e-10);
        EXPECT_EQ(rep.extra_candidates, 0);
        EXPECT_TRUE(rep.pass);
        EXPECT_NO_THROW(rep.require());
    }
}

TEST(ParityAudit, EvenDimensionsHaveEightCases) {
    for (std::int64_t n : {4, 6, 8}) {
        const ParityAuditReport rep = parity_uniqueness_audit(n);
        ASSERT_EQ(rep.cases.size(), 8u);
        std::set<std::string> ids;
        for (const ParityAuditCase &c : rep.cases) {
            EXPECT_TRUE(c.found) << c.id;
            EXPECT_LT(c.residual, 1e-10) << c.id;
            EXPECT_TRUE(c.sign == 1 || c.sign == -1);
            ids.insert(c.id);
        }
        EXPECT_EQ(ids.size(), 8u);
        EXPECT_EQ(rep.extra_candidates, 0);
        EXPECT_EQ(rep.candidates_scanned, static_cast<std::int64_t>(enumerate_symplectic(n).size()) * n * n);
        EXPECT_TRUE(rep.pass);
    }
}

TEST(ParityAudit, TextRecordListsEveryCase) {
    const ParityAuditReport rep = parity_uniqueness_audit(4);
    const std::string text = rep.to_text();
    for (const ParityAuditCase &c : rep.cases) {
        EXPECT_NE(text.find("case=" + c.id + " "), std::string::npos);
    }
    EXPECT_NE(text.find("extra=0 verdict=pass"), std::string::npos);
}

TEST(ParityAudit, RespectsCap) {
    EXPECT_THROW(parity_uniqueness_audit(9), DimensionError);
    EXPECT_THROW(parity_uniqueness_audit(1), DimensionError);
}

TEST(ParityAudit, FailingReportThrowsOnRequire) {
    ParityAuditReport rep = parity_uniqueness_audit(3);
    rep.pass = false;
    EXPECT_THROW(rep.require(), AuditFailure);
}

TEST(SymmetryMatrix, Instances) {
    EXPECT_EQ(symmetry_matrix(4).entries(), (std::array<std::int64_t, 4>{13, 8, 8, 5}));
    EXPECT_EQ(symmetry_matrix(6).entries(), (std::array<std::int64_t, 4>{43, 24, 24, 19}));
    for (std::int64_t d = 4; d <= 10; d += 2) {
        const auto F = symmetry_matrix(d).entries();
        const std::int64_t m = 2 * d * (d - 2);
        EXPECT_EQ(oracle::mod(F[0] * F[3] - F[1] * F[2], m), 1);
    }
    EXPECT_THROW(symmetry_matrix(5), DimensionError);
    EXPECT_THROW(symmetry_matrix(2), DimensionError);
}

TEST(SymmetryMatrix, UnitaryIsCovariant) {
    for (std::int64_t d : {4, 6}) {
        const SymplecticMatrix F = symmetry_matrix(d);
        EXPECT_LT(covariance_check(symplectic_unitary(F), F), 1e-10);
    }
}

TEST(EnumerateSymplectic, CountMatchesBruteForce) {
    for (std::int64_t n = 1; n <= 6; ++n) {
        const std::int64_t m = bar(n);
        std::int64_t count = 0;
        for (std::int64_t a = 0; a < m; ++a) {
            for (std::int64_t b = 0; b < m; ++b) {
                for (std::int64_t c = 0; c < m; ++c) {
                    for (std::int64_t e = 0; e < m; ++e) {
                        count += oracle::mod(a * e - b * c, m) == 1 % m ? 1 : 0;
                    }
                }
            }
        }
        const auto all = enumerate_symplectic(n);
        EXPECT_EQ(static_cast<std::int64_t>(all.size()), count) << "n=" << n;
        std::set<std::array<std::int64_t, 4>> distinct;
        for (const auto &F : all) {
            distinct.insert(F.entries());
        }
        EXPECT_EQ(distinct.size(), all.size());
    }
}
