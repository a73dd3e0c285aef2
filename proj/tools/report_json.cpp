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

#include "report_json.hpp"

namespace sic::cli {

namespace {

json optional_number(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

const char *mode_name(FrameMode m) { return m == FrameMode::Coarse ? "coarse" : "fine"; }

}  // namespace

json to_json(const ComplexMatrix &M) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json row_re = json::array();
        json row_im = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) {
            row_re.push_back(M(r, c).real());
            row_im.push_back(M(r, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return {{"rows", M.rows()}, {"cols", M.cols()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

json to_json(const ComplexVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

json to_json(const DisplacementIndex &idx) { return json::array({idx.a, idx.b}); }

json to_json(const SymplecticMatrix &F) {
    const auto e = F.entries();
    return {{"entries", {{e[0], e[1]}, {e[2], e[3]}}}, {"modulus", F.modulus()}, {"dim", F.dim()}};
}

json to_json(const SicReport &r) {
    return {{"n", r.n},
            {"tol", r.tol},
            {"max_overlap_residual", r.max_overlap_residual},
            {"worst_index", to_json(r.worst_index)},
            {"resolution_residual", r.resolution_residual},
            {"pass", r.pass}};
}

json to_json(const AlignmentReport &r) {
    json witness = nullptr;
    if (r.witness_matrix) {
        const auto &w = *r.witness_matrix;
        witness = {{w[0], w[1]}, {w[2], w[3]}};
    }
    return {{"d", r.d},
            {"n", r.n},
            {"tol", r.tol},
            {"condition1_pass", r.condition1_pass},
            {"condition1_max_residual", r.condition1_max_residual},
            {"condition1_worst", {r.condition1_worst.first, r.condition1_worst.second}},
            {"condition2_pass", r.condition2_pass ? json(*r.condition2_pass) : json(nullptr)},
            {"condition2_max_residual", optional_number(r.condition2_max_residual)},
            {"witness_matrix", witness},
            {"witness_determinant", r.witness_determinant ? json(*r.witness_determinant) : json(nullptr)},
            {"candidates_tested", r.candidates_tested}};
}

json to_json(const PiResult &r) {
    return {{"which", r.which},
            {"trace", r.trace},
            {"rank", r.rank},
            {"eigen_rank", r.eigen_rank},
            {"idempotency_residual", r.idempotency_residual},
            {"rank_consistent", r.rank_consistent}};
}

json to_json(const BlockParityReport &r) {
    return {{"d", r.d},
            {"n1", r.n1},
            {"n2", r.n2},
            {"second_factor_odd", r.second_factor_odd},
            {"residuals", r.residuals},
            {"tol", r.tol},
            {"pass", r.pass}};
}

json to_json(const FramePartition &p) {
    json frames = json::array();
    for (const Frame &f : p.frames) {
        frames.push_back({{"shift", {f.shift.first, f.shift.second}},
                          {"size", f.indices.size()},
                          {"rank", f.rank},
                          {"tightness_residual", f.tightness_residual},
                          {"equiangularity_residual", f.equiangularity_residual},
                          {"pass", f.pass}});
    }
    return {{"mode", mode_name(p.mode)},
            {"d", p.d},
            {"expected_rank", p.expected_rank},
            {"vectors_per_frame", p.vectors_per_frame},
            {"frame_count", p.frames.size()},
            {"covers_orbit", p.covers_orbit},
            {"tol", p.tol},
            {"pass", p.pass},
            {"frames", std::move(frames)}};
}

json to_json(const SymmetryReport &r) {
    return {{"d", r.d},
            {"square_residual", r.square_residual},
            {"fixed_point_residual", r.fixed_point_residual},
            {"permutation_residual", r.permutation_residual},
            {"block_form_residual", r.block_form_residual},
            {"clause_pass", r.clause_pass},
            {"pass", r.pass}};
}

json to_json(const ParityAuditReport &r) {
    json cases = json::array();
    for (const ParityAuditCase &c : r.cases) {
        cases.push_back({{"id", c.id},
                         {"F", {{c.F[0], c.F[1]}, {c.F[2], c.F[3]}}},
                         {"k", c.k},
                         {"l", c.l},
                         {"found", c.found},
                         {"sign", c.sign},
                         {"phase", {c.forced_phase.real(), c.forced_phase.imag()}},
                         {"residual", c.residual},
                         {"pass", c.pass}});
    }
    return {{"n", r.n},
            {"case_count", r.cases.size()},
            {"candidates_scanned", r.candidates_scanned},
            {"extra_candidates", r.extra_candidates},
            {"max_residual", r.max_residual},
            {"pass", r.pass},
            {"cases", std::move(cases)}};
}

json to_json(const IntertwinerReport &r) {
    return {{"n", r.n},
            {"unitarity_residual", r.unitarity_residual},
            {"x_residual", r.x_residual},
            {"z_residual", r.z_residual},
            {"block_leakage", r.block_leakage},
            {"block_residual", r.block_residual},
            {"tol", r.tol},
            {"leakage_tol", r.leakage_tol},
            {"pass", r.pass}};
}

json to_json(const SplitReport &r) {
    return {{"n1", r.n1}, {"n2", r.n2}, {"max_residual", r.max_residual}, {"tol", r.tol}, {"pass", r.pass}};
}

json to_json(const SubspaceSplittingReport &r) {
    return {{"d", r.d},
            {"n", r.n},
            {"n1", r.n1},
            {"n2", r.n2},
            {"fine_residual", r.fine_residual},
            {"coarse_residual", r.coarse_residual},
            {"leakage", r.leakage},
            {"pass", r.pass}};
}

json to_json(const SearchResult &r) {
    return {{"n", r.fiducial.dim()},
            {"frame_potential", r.frame_potential},
            {"alignment_residual", optional_number(r.alignment_residual)},
            {"iterations_used", r.iterations_used},
            {"converged", r.converged},
            {"restart_index", r.restart_index},
            {"restarts_run", r.restarts_run},
            {"amplitudes", to_json(r.fiducial.amplitudes())}};
}

}  // namespace sic::cli
