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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sicalign/overlaps.hpp"
#include "sicalign/sic.hpp"

namespace sic {

/// sum_{a,b} |<psi|D_{a,b}|psi>|^4. Bounded below by 2n/(n+1), with
/// equality exactly on SIC fiducials.
double frame_potential(const FiducialVector &fid);

/// 2n/(n+1)
double frame_potential_floor(std::int64_t n);

/// sum over (a, b) in [0, d-2)^2 minus the origin of
/// |sqrt(n+1) <psi|D_{da,db}|psi> - target(a, b)|^2.
double alignment_penalty(const FiducialVector &fid, std::int64_t d);

/// Objective on the ambient space, f(psi) = FP(phi) + w * penalty(phi) with
/// phi = psi / |psi|, and its Wirtinger gradient with respect to conj(psi).
/// Invariant under scaling of psi, so the gradient is orthogonal to psi.
class SearchObjective {
   public:
    /// align_d = 0 switches the penalty off.
    SearchObjective(std::int64_t n, std::int64_t align_d, double weight);

    std::int64_t dim() const noexcept { return n_; }
    double weight() const noexcept { return weight_; }
    void set_weight(double w) noexcept { weight_ = w; }

    double value(const ComplexVector &psi, ComplexVector *grad);

   private:
    std::int64_t n_;
    std::int64_t align_d_;
    double weight_;
    OverlapEngine engine_;
    std::vector<DisplacementIndex> penalty_indices_;
    std::vector<cplx> penalty_targets_;
};

struct SearchConfig {
    std::int64_t dim = 2;
    std::uint64_t seed = 0;
    std::int64_t max_iterations = 20000;  // per restart, summed over stages
    std::int64_t restarts = 8;
    double penalty_weight = 1.0;
    std::optional<std::int64_t> align_d;  // adds the alignment penalty when set
    bool use_zauner_subspace = false;
    double convergence_threshold = 1e-10;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws std::invalid_argument for a non-positive threshold, zero
    /// restarts or an alignment d that does not match dim.
    void validate() const;
};

struct SearchResult {
    FiducialVector fiducial;
    double frame_potential = 0.0;
    std::optional<double> alignment_residual;  // penalty at the returned vector
    std::int64_t iterations_used = 0;
    bool converged = false;
    std::int64_t restart_index = 0;  // restart that produced the fiducial
    std::int64_t restarts_run = 0;

    /// Throws NotConverged when the budget ran out.
    void require_converged() const;
};

/// Quasi-Newton minimization of the frame potential (plus the weighted
/// alignment penalty) from seeded random starts, each run followed by a
/// least-squares polish of the SIC equations. Restarts run in parallel
/// batches; the lowest-index converged restart wins, otherwise the lowest
/// objective. Bit-reproducible for a fixed seed.
SearchResult find_fiducial(const SearchConfig &cfg);

/// Orthonormal basis of the largest eigenspace of the order-three Clifford
/// unitary for [[0, -1], [1, -1]].
ComplexMatrix zauner_subspace(std::int64_t n);

/// Line one holds n, then n lines "re im" at 17 significant digits.
void save_fiducial(const FiducialVector &fid, const std::filesystem::path &path);

/// Throws ParseError naming the line, DimensionMismatch for a wrong count or
/// a norm further than 1e-6 from one. Smaller norm errors are renormalized
/// with a message appended to warnings.
FiducialVector load_fiducial(const std::filesystem::path &path, std::vector<std::string> *warnings = nullptr);

}  // namespace sic
