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
#include "sicalign/decomp.hpp"
#include "sicalign/errors.hpp"

using namespace sic;

TEST(UnorthodoxGenerators, GroupRelations) {
    for (std::int64_t n : {4, 8, 12, 16}) {
        const UnorthodoxGenerators g = unorthodox_generators(n);
        const ComplexMatrix I = ComplexMatrix::Identity(n, n);
        EXPECT_LT(unitarity_residual(g.x), 1e-13);
        EXPECT_LT(unitarity_residual(g.z), 1e-13);
        EXPECT_LT((oracle::matrix_power(g.x, n) - I).norm(), 1e-13);
        EXPECT_LT((oracle::matrix_power(g.z, n) - I).norm(), 1e-13);
        EXPECT_LT((g.z * g.x - unit_root(1, n) * g.x * g.z).norm(), 1e-13) << "n=" << n;
    }
    EXPECT_THROW(unorthodox_generators(6), DimensionError);
    EXPECT_THROW(unorthodox_generators(0), DimensionError);
}

TEST(Intertwiner, ConjugatesToStandardGenerators) {
    for (std::int64_t n : {4, 8, 12}) {
        const ComplexMatrix U = intertwiner(n);
        const UnorthodoxGenerators g = unorthodox_generators(n);
        EXPECT_LT(unitarity_residual(U), 1e-12);
        EXPECT_LT((U * g.x * U.adjoint() - oracle::shift(n)).norm(), 1e-12);
        EXPECT_LT((U * g.z * U.adjoint() - oracle::clock(n)).norm(), 1e-12);
        const IntertwinerReport rep = intertwiner_check(n);
        EXPECT_TRUE(rep.pass);
        EXPECT_LT(rep.block_leakage, 1e-13);
    }
    EXPECT_THROW(intertwiner(10), DimensionError);
}

TEST(Intertwiner, BuildingBlocks) {
    EXPECT_LT(unitarity_residual(dft_matrix(5)), 1e-14);
    const ComplexMatrix M = interleave_matrix(3);
    EXPECT_EQ(M(0, 0), cplx(1.0));
    EXPECT_EQ(M(1, 3), cplx(1.0));
    EXPECT_EQ(M(4, 2), cplx(1.0));
    EXPECT_EQ(M(5, 5), cplx(1.0));
    EXPECT_LT(unitarity_residual(M), 1e-15);
}

TEST(BlockDecomposition, ProjectorsResolveIdentity) {
    for (std::int64_t n : {4, 8, 12}) {
        const BlockDecomposition blocks{n};
        ComplexMatrix sum = ComplexMatrix::Zero(n, n);
        for (int j = 0; j < 4; ++j) {
            const ComplexMatrix P = blocks.projector(j);
            EXPECT_EQ(P * P, P);
            EXPECT_EQ(P.trace(), cplx(static_cast<double>(n / 4)));
            for (int k = 0; k < j; ++k) {
                EXPECT_EQ((P * blocks.projector(k)).norm(), 0.0);
            }
            sum += P;
        }
        EXPECT_EQ(sum, ComplexMatrix::Identity(n, n));
    }
    EXPECT_THROW(BlockDecomposition(4).projector(4), std::out_of_range);
    EXPECT_THROW(BlockDecomposition(8).block(ComplexMatrix::Identity(4, 4), 0), DimensionMismatch);
}

TEST(EvenBlockStructure, Examples) {
    const EvenBlockResult id = even_block_structure(8, 0, 0);
    for (const ComplexMatrix &B : id.blocks) {
        EXPECT_LT((B - ComplexMatrix::Identity(2, 2)).norm(), 1e-13);
    }
    const EvenBlockResult r10 = even_block_structure(8, 1, 0);
    const ComplexMatrix D = displacement(2, 1, 0);
    const cplx w{0.0, 1.0};
    EXPECT_LT((r10.blocks[0] - D).norm(), 1e-13);
    EXPECT_LT((r10.blocks[1] - w * D).norm(), 1e-13);
    EXPECT_LT((r10.blocks[2] - D).norm(), 1e-13);
    EXPECT_LT((r10.blocks[3] - w * D).norm(), 1e-13);

    const EvenBlockResult r11 = even_block_structure(12, 1, 1);
    const ComplexMatrix D3 = displacement(3, 1, 1);
    EXPECT_LT((r11.blocks[0] + D3).norm(), 1e-12);
    EXPECT_LT(r11.block_residual, 1e-12);
}

TEST(EvenBlockStructure, AllEvenIndices) {
    for (std::int64_t n : {4, 8, 12}) {
        const std::int64_t m = n / 4;
        const ComplexMatrix U = intertwiner(n);
        for (std::int64_t a = 0; a < n; ++a) {
            for (std::int64_t b = 0; b < n; ++b) {
                const EvenBlockResult r = even_block_structure(n, a, b);
                EXPECT_LT(r.leakage, 1e-13);
                EXPECT_LT(r.block_residual, 1e-12);
                // Oracle: assemble the expected block-diagonal operator and compare.
                const double sign = (a * b) % 2 == 0 ? 1.0 : -1.0;
                const oracle::Matrix core = oracle::displacement(m, a, b);
                const std::array<std::int64_t, 4> e{0, a, b, a + b};
                oracle::Matrix expected = oracle::Matrix::Zero(n, n);
                for (int j = 0; j < 4; ++j) {
                    expected.block(j * m, j * m, m, m) = sign * unit_root(e[j], 2 * m) * core;
                }
                EXPECT_LT((U.adjoint() * oracle::displacement(n, 2 * a, 2 * b) * U - expected).norm(), 1e-10);
            }
        }
    }
}

TEST(EvenBlockStructure, OddIndexLeaks) {
    // D_{1,0} is not block diagonal, so pretending it is must be reported.
    const BlockDecomposition blocks{8};
    const ComplexMatrix U = intertwiner(8);
    EXPECT_GT(blocks.off_block_mass(U.adjoint() * displacement(8, 1, 0) * U), 1.0);
}

TEST(TensorSplit, IsPermutation) {
    const TensorSplit split{4, 3};
    const ComplexMatrix &Q = split.isometry();
    EXPECT_LT(unitarity_residual(Q), 1e-15);
    for (std::int64_t u = 0; u < 12; ++u) {
        EXPECT_EQ(Q((u % 4) * 3 + u % 3, u), cplx(1.0));
    }
    oracle::Rng rng{41};
    const ComplexMatrix A = rng.matrix(12, 12);
    EXPECT_LT((split.from_product(split.to_product(A)) - A).norm(), 1e-14);
    EXPECT_THROW(TensorSplit(4, 6), NotCoprime);
}

TEST(SplitDisplacement, Examples) {
    EXPECT_EQ(split_displacement(2, 3, 0, 0), 0.0);
    EXPECT_LT(split_displacement(4, 3, 1, 1), 1e-12);
    EXPECT_LT(split_displacement(3, 5, 7, 2), 1e-12);
    EXPECT_THROW(split_displacement(2, 4, 1, 1), NotCoprime);
}

TEST(SplitDisplacement, ExhaustivePairs) {
    for (auto [n1, n2] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 3}, {3, 4}, {4, 5}, {3, 5}}) {
        const SplitReport rep = split_check(n1, n2);
        EXPECT_TRUE(rep.pass);
        EXPECT_LT(rep.max_residual, 1e-12);
    }
}

TEST(SubspaceSplitting, SmallFamilies) {
    for (std::int64_t d : {4, 6, 8}) {
        const SubspaceSplittingReport rep = subspace_splitting_check(d);
        EXPECT_EQ(rep.n, d * (d - 2));
        EXPECT_TRUE(rep.pass) << "d=" << d;
        EXPECT_LT(rep.fine_residual, 1e-12);
        EXPECT_LT(rep.coarse_residual, 1e-12);
    }
    EXPECT_THROW(subspace_splitting_check(5), DimensionError);
}

TEST(SubspaceSplitting, FirstBlockOfShiftInDimension24) {
    const std::int64_t d = 6;
    const BlockDecomposition blocks{24};
    const TensorSplit split{3, 2};
    const ComplexMatrix U = intertwiner(24);
    const ComplexMatrix R = U.adjoint() * displacement(24, 6, 0) * U;
    const oracle::Matrix target = oracle::kron(oracle::Matrix::Identity(3, 3), oracle::displacement(2, 1, 0));
    EXPECT_LT((split.to_product(blocks.block(R, 0)) - target).norm(), 1e-12);
    (void)d;
}

TEST(Twirl, FactorizedAndIdentityInputs) {
    oracle::Rng rng{43};
    const std::int64_t n1 = 3, n2 = 4;
    const ComplexMatrix B = rng.matrix(n1, n1);
    const ComplexMatrix C = rng.matrix(n2, n2);
    const ComplexMatrix BC = kron(B, C);
    EXPECT_LT((twirl_left(BC, n1, n2) - kron(ComplexMatrix::Identity(n1, n1), B.trace() * C)).norm(), 1e-12);
    EXPECT_LT((twirl_right(BC, n1, n2) - kron(C.trace() * B, ComplexMatrix::Identity(n2, n2))).norm(), 1e-12);
    const ComplexMatrix I = ComplexMatrix::Identity(12, 12);
    EXPECT_LT((twirl_left(I, n1, n2) - static_cast<double>(n1) * I).norm(), 1e-12);
}

TEST(Twirl, MatchesIndependentPartialTrace) {
    oracle::Rng rng{47};
    for (auto [n1, n2] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 4}, {4, 5}}) {
        const oracle::Matrix I1 = oracle::Matrix::Identity(n1, n1);
        const oracle::Matrix I2 = oracle::Matrix::Identity(n2, n2);
        for (int t = 0; t < 50; ++t) {
            const ComplexMatrix A = rng.matrix(n1 * n2, n1 * n2);
            const oracle::Matrix left = oracle::kron(I1, oracle::partial_trace_first(A, n1, n2));
            const oracle::Matrix right = oracle::kron(oracle::partial_trace_second(A, n1, n2), I2);
            EXPECT_LT((twirl_left(A, n1, n2) - left).norm(), 1e-12 * A.norm());
            EXPECT_LT((twirl_right(A, n1, n2) - right).norm(), 1e-12 * A.norm());
            EXPECT_LT((partial_trace_first(A, n1, n2) - oracle::partial_trace_first(A, n1, n2)).norm(), 1e-13 * A.norm());
            EXPECT_LT((partial_trace_second(A, n1, n2) - oracle::partial_trace_second(A, n1, n2)).norm(),
                      1e-13 * A.norm());
        }
    }
    EXPECT_THROW(twirl_left(ComplexMatrix::Identity(5, 5), 2, 3), DimensionMismatch);
}

TEST(Twirl, RankOneMarginalsShareSpectrum) {
    oracle::Rng rng{53};
    const std::int64_t n1 = 3, n2 = 4;
    for (int t = 0; t < 50; ++t) {
        const ComplexVector v = rng.unit_vector(n1 * n2);
        const ComplexMatrix A = v * v.adjoint();
        const Eigen::VectorXd s1 = oracle::spectrum(partial_trace_first(A, n1, n2));
        const Eigen::VectorXd s2 = oracle::spectrum(partial_trace_second(A, n1, n2));
        // Ascending order: the top min(n1, n2) eigenvalues coincide, the rest vanish.
        for (int i = 0; i < 3; ++i) {
            EXPECT_NEAR(s1(s1.size() - 1 - i), s2(s2.size() - 1 - i), 1e-10);
        }
        EXPECT_NEAR(s1(0), 0.0, 1e-10);
    }
}
