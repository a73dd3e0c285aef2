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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sicalign/clifford.hpp"
#include "sicalign/weylheis.hpp"

namespace sic {

/// Unit vector in C^n, the seed of a Weyl-Heisenberg orbit.
class FiducialVector {
   public:
    /// Throws DimensionError for an empty vector and std::invalid_argument
    /// unless the norm is 1 to 1e-12.
    explicit FiducialVector(ComplexVector amplitudes, std::string label = {});

    /// Rescales to unit norm. Throws std::invalid_argument for a zero vector.
    static FiducialVector normalized(ComplexVector amplitudes, std::string label = {});

    std::int64_t dim() const noexcept { return amplitudes_.size(); }
    const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
    const std::string &label() const noexcept { return label_; }

   private:
    ComplexVector amplitudes_;
    std::string label_;
};

/// The n^2 vectors D_{a,b} psi, stored at index a * n + b.
std::vector<ComplexVector> sic_orbit(const FiducialVector &fid);

/// <psi|D_{a,b}|psi> for (a, b) in [0, n)^2.
ComplexMatrix orbit_overlaps(const FiducialVector &fid);

struct SicReport {
    std::int64_t n = 0;
    double tol = 0.0;
    double max_overlap_residual = 0.0;  // max | |<psi|D psi>|^2 - 1/(n+1) |
    DisplacementIndex worst_index;
    double resolution_residual = 0.0;  // ||(1/n) sum |psi_ab><psi_ab| - I||
    bool pass = false;

    /// Throws NotASic naming the worst index.
    void require() const;
};

SicReport verify_sic(const FiducialVector &fid, double tol = 1e-8);

struct OverlapPhaseTable {
    std::int64_t dim = 0;
    ComplexMatrix phases;  // sqrt(n+1) <psi|D_{a,b} psi>, entry (0,0) = 1
};

/// Requires verify_sic to pass at tol; throws NotASic otherwise.
OverlapPhaseTable overlap_phases(const FiducialVector &fid, double tol = 1e-6);

/// Phase targets of the first alignment condition at D_{da,db}, a,b in
/// [0, d-2): 1 for odd d, -(-1)^{(a+1)(b+1)} for even d.
cplx alignment_target(std::int64_t d, std::int64_t a, std::int64_t b);

struct AlignmentReport {
    std::int64_t d = 0;
    std::int64_t n = 0;
    double tol = 0.0;
    bool condition1_pass = false;
    double condition1_max_residual = 0.0;
    std::pair<std::int64_t, std::int64_t> condition1_worst{0, 0};
    std::optional<bool> condition2_pass;
    std::optional<double> condition2_max_residual;
    std::optional<std::array<std::int64_t, 4>> witness_matrix;
    std::optional<std::int64_t> witness_determinant;  // +1 or -1 mod d
    std::int64_t candidates_tested = 0;
};

/// Compares sqrt(n+1) <psi|D_{da,db} psi> to alignment_target for every
/// (a, b) in [0, d-2)^2 other than the origin. fid must live in dimension d(d-2).
AlignmentReport check_alignment_c1(const FiducialVector &fid, std::int64_t d, double tol = 1e-6);

/// Every (alpha, beta, gamma, delta) in Z_d^4 with determinant +-1 mod d, lexicographic.
std::vector<std::array<std::int64_t, 4>> witness_candidates(std::int64_t d);

struct WitnessSearch {
    std::optional<std::array<std::int64_t, 4>> witness;
    std::int64_t determinant = 0;  // +1 or -1 mod d when a witness exists
    double residual = 0.0;         // of the witness, else the best candidate
    std::int64_t candidates_tested = 0;
};

/// Lexicographically first candidate matrix for which the phase table of
/// the high-dimensional fiducial at ((d-2)a, (d-2)b) equals the sign pattern
/// times the squared low-dimensional phase at the transformed index, for all
/// (a, b) in [0, d)^2 other than the origin. Tables hold sqrt(dim+1) times
/// the overlaps: n x n and d x d.
WitnessSearch find_alignment_witness(const ComplexMatrix &phases_n, const ComplexMatrix &phases_d, std::int64_t d,
                                     double tol);

/// Condition 1 plus a search for a matrix relating the overlap phases at
/// D_{(d-2)a,(d-2)b} in dimension d(d-2) to the squared phases in dimension d.
/// Throws SearchSpaceExhausted when no candidate works.
AlignmentReport check_alignment_c2(const FiducialVector &fid_n, const FiducialVector &fid_d, std::int64_t d,
                                   double tol = 1e-6);

struct PiResult {
    int which = 1;
    ComplexMatrix matrix;
    double trace = 0.0;
    std::int64_t rank = 0;        // round(trace)
    std::int64_t eigen_rank = 0;  // eigenvalues above 0.5
    double idempotency_residual = 0.0;
    bool rank_consistent = false;  // trace within 1e-6 of an integer and both estimators agree
};

/// which = 1: ((d-1)/2d) sum_{a,b<d} |psi_{(d-2)a,(d-2)b}><.|
/// which = 2: ((d-1)/2(d-2)) sum_{a,b<d-2} |psi_{da,db}><.|
PiResult projector_pi(const FiducialVector &fid, std::int64_t d, int which);

/// d(d-1)/2 for the first projector, (d-1)(d-2)/2 for the second.
std::int64_t expected_pi_rank(std::int64_t d, int which);

/// Frobenius distance between the first projector assembled from its
/// displacement expansion and the direct sum of projectors.
double pi_expansion_crosscheck(const FiducialVector &fid, std::int64_t d);

/// Residuals of the four diagonal blocks of the first projector, rotated to
/// the four-block representation and split as C^{n1} (x) C^{n2}, against
/// (1/2) 1 (x) (1 + s_j P_j) for the parity targets of each block.
struct BlockParityReport {
    std::int64_t d = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    bool second_factor_odd = false;
    std::array<double, 4> residuals{};
    double tol = 0.0;
    bool pass = false;

    /// Throws BlockMismatch naming the first failing block.
    void require() const;
};

BlockParityReport pi_block_parity_check(const FiducialVector &fid, std::int64_t d, double tol = 1e-8);

/// (sign, parity label) of the target in block j in [0, 4).
std::pair<int, DisplacementIndex> block_parity_target(std::int64_t d, int j);

/// For each of the four blocks: the nonzero spectra of
/// (d-1) tr_1(L_j psi psi^dagger L_j) and (d-1) tr_2(L_j psi psi^dagger L_j).
struct MarginalSpectra {
    std::array<std::vector<double>, 4> right;  // n2 x n2 marginal
    std::array<std::vector<double>, 4> left;   // n1 x n1 marginal
    double max_mismatch = 0.0;
};

MarginalSpectra marginal_spectra(const FiducialVector &fid, std::int64_t d);

struct Frame {
    std::pair<std::int64_t, std::int64_t> shift{0, 0};
    std::vector<DisplacementIndex> indices;
    std::int64_t rank = 0;
    double tightness_residual = 0.0;      // ||(rank/m) S - P_span||
    double equiangularity_residual = 0.0;  // max | |<i|j>|^2 - (m-r)/(r(m-1)) |
    bool pass = false;
};

enum class FrameMode { Coarse, Fine };

struct FramePartition {
    FrameMode mode = FrameMode::Coarse;
    std::int64_t d = 0;
    std::int64_t expected_rank = 0;
    std::int64_t vectors_per_frame = 0;
    std::vector<Frame> frames;
    bool covers_orbit = false;  // frames are disjoint and exhaust [0, n)^2
    double tol = 0.0;
    bool pass = false;

    /// Throws PartitionFailure listing the failing cosets.
    void require() const;
};

/// Coarse: D_{s,t} shifts, (s, t) in [0, d-2)^2, of {psi_{(d-2)a,(d-2)b}}.
/// Fine: shifts (s, t) in [0, d)^2 of {psi_{da,db}}.
FramePartition extract_frames(const FiducialVector &fid, std::int64_t d, FrameMode mode, double tol = 1e-8);

/// Block-diagonal unitary built from 1 (x) P^{(n2)} blocks with signs
/// (+, -, -, -) and parity labels (0,0), (0,1), (-1,0), (-1,1), in the
/// four-block representation and standard tensor ordering.
ComplexMatrix block_symmetry_unitary(std::int64_t d);

struct SymmetryReport {
    std::int64_t d = 0;
    double square_residual = 0.0;       // V^2 against I up to phase
    double fixed_point_residual = 0.0;  // V psi against psi up to phase
    double permutation_residual = 0.0;  // V P_{ab} V^dagger against P_{F(a,b)}
    double block_form_residual = 0.0;   // U^dagger V U against the block unitary up to phase
    std::array<bool, 4> clause_pass{};
    bool pass = false;

    /// Throws SymmetryFailure naming the first failing clause.
    void require() const;
};

SymmetryReport verify_symmetry(const FiducialVector &fid, std::int64_t d, double square_tol = 1e-10,
                               double fixed_tol = 1e-8, double block_tol = 1e-9);

}  // namespace sic
