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

#include "sicalign/sic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sicalign/decomp.hpp"
#include "sicalign/errors.hpp"
#include "sicalign/overlaps.hpp"

namespace sic {

FiducialVector::FiducialVector(ComplexVector amplitudes, std::string label)
    : amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
    if (amplitudes_.size() == 0) {
        throw DimensionError("FiducialVector: empty amplitude vector");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::invalid_argument("FiducialVector: norm " + std::to_string(norm) + " is not 1");
    }
}

FiducialVector FiducialVector::normalized(ComplexVector amplitudes, std::string label) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0)) {
        throw std::invalid_argument("FiducialVector: cannot normalize a zero vector");
    }
    amplitudes /= norm;
    return FiducialVector(std::move(amplitudes), std::move(label));
}

std::vector<ComplexVector> sic_orbit(const FiducialVector &fid) {
    const std::int64_t n = fid.dim();
    std::vector<ComplexVector> orbit;
    orbit.reserve(static_cast<std::size_t>(n * n));
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            orbit.push_back(apply_displacement({a, b, n}, fid.amplitudes()));
        }
    }
    return orbit;
}

ComplexMatrix orbit_overlaps(const FiducialVector &fid) {
    OverlapEngine engine{fid.dim()};
    return engine.overlaps(fid.amplitudes());
}

void SicReport::require() const {
    if (!pass) {
        std::ostringstream msg;
        msg << "not a SIC fiducial in dimension " << n << ": overlap residual " << max_overlap_residual << " at ("
            << worst_index.a << "," << worst_index.b << "), resolution residual " << resolution_residual
            << ", tolerance " << tol;
        throw NotASic(msg.str());
    }
}

SicReport verify_sic(const FiducialVector &fid, double tol) {
    const std::int64_t n = fid.dim();
    SicReport rep;
    rep.n = n;
    rep.tol = tol;
    rep.worst_index = {0, 0, n};
    const double target = 1.0 / static_cast<double>(n + 1);
    const ComplexMatrix q = orbit_overlaps(fid);
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            if (a == 0 && b == 0) {
                continue;
            }
            const double r = std::abs(std::norm(q(a, b)) - target);
            if (r > rep.max_overlap_residual) {
                rep.max_overlap_residual = r;
                rep.worst_index = {a, b, n};
            }
        }
    }
    ComplexMatrix frame = ComplexMatrix::Zero(n, n);
    for (const ComplexVector &v : sic_orbit(fid)) {
        frame.noalias() += v * v.adjoint();
    }
    frame /= static_cast<double>(n);
    rep.resolution_residual = (frame - ComplexMatrix::Identity(n, n)).norm();
    rep.pass = rep.max_overlap_residual <= tol && rep.resolution_residual <= tol;
    return rep;
}

OverlapPhaseTable overlap_phases(const FiducialVector &fid, double tol) {
    verify_sic(fid, tol).require();
    const std::int64_t n = fid.dim();
    OverlapPhaseTable table{n, std::sqrt(static_cast<double>(n + 1)) * orbit_overlaps(fid)};
    table.phases(0, 0) = 1.0;
    return table;
}

cplx alignment_target(std::int64_t d, std::int64_t a, std::int64_t b) {
    if (d % 2 != 0) {
        return 1.0;
    }
    return ((a + 1) * (b + 1)) % 2 == 0 ? -1.0 : 1.0;
}

namespace {

void require_aligned_dim(const FiducialVector &fid, std::int64_t d) {
    if (d < 3) {
        throw DimensionError("alignment: d must be at least 3, got " + std::to_string(d));
    }
    if (fid.dim() != d * (d - 2)) {
        throw DimensionMismatch("alignment: fiducial dimension " + std::to_string(fid.dim()) + " is not d(d-2) = " +
                                std::to_string(d * (d - 2)));
    }
}

ComplexMatrix scaled_overlaps(const FiducialVector &fid) {
    return std::sqrt(static_cast<double>(fid.dim() + 1)) * orbit_overlaps(fid);
}

}  // namespace

AlignmentReport check_alignment_c1(const FiducialVector &fid, std::int64_t d, double tol) {
    require_aligned_dim(fid, d);
    AlignmentReport rep;
    rep.d = d;
    rep.n = fid.dim();
    rep.tol = tol;
    const ComplexMatrix phases = scaled_overlaps(fid);
    for (std::int64_t a = 0; a < d - 2; ++a) {
        for (std::int64_t b = 0; b < d - 2; ++b) {
            if (a == 0 && b == 0) {
                continue;
            }
            const double r = std::abs(phases(d * a, d * b) - alignment_target(d, a, b));
            if (r > rep.condition1_max_residual) {
                rep.condition1_max_residual = r;
                rep.condition1_worst = {a, b};
            }
        }
    }
    rep.condition1_pass = rep.condition1_max_residual <= tol;
    return rep;
}

std::vector<std::array<std::int64_t, 4>> witness_candidates(std::int64_t d) {
    std::vector<std::array<std::int64_t, 4>> out;
    for (std::int64_t al = 0; al < d; ++al) {
        for (std::int64_t be = 0; be < d; ++be) {
            for (std::int64_t ga = 0; ga < d; ++ga) {
                for (std::int64_t de = 0; de < d; ++de) {
                    const std::int64_t det = reduce(al * de - be * ga, d);
                    if (det == reduce(1, d) || det == reduce(-1, d)) {
                        out.push_back({al, be, ga, de});
                    }
                }
            }
        }
    }
    return out;
}

WitnessSearch find_alignment_witness(const ComplexMatrix &phases_n, const ComplexMatrix &phases_d, std::int64_t d,
                                     double tol) {
    const std::int64_t n = d * (d - 2);
    if (phases_n.rows() != n || phases_n.cols() != n || phases_d.rows() != d || phases_d.cols() != d) {
        throw DimensionMismatch("find_alignment_witness: phase tables must be d(d-2) and d square");
    }
    WitnessSearch out;
    out.residual = std::numeric_limits<double>::infinity();
    for (const auto &c : witness_candidates(d)) {
        ++out.candidates_tested;
        double worst = 0.0;
        for (std::int64_t a = 0; a < d && worst <= tol; ++a) {
            for (std::int64_t b = 0; b < d; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const std::int64_t x = reduce(c[0] * a + c[1] * b, d);
                const std::int64_t y = reduce(c[2] * a + c[3] * b, d);
                const cplx squared = phases_d(x, y) * phases_d(x, y);
                const double sign = d % 2 != 0 ? -1.0 : (((a + 1) * (b + 1)) % 2 == 0 ? 1.0 : -1.0);
                worst = std::max(worst, std::abs(phases_n((d - 2) * a, (d - 2) * b) - sign * squared));
                if (worst > tol) {
                    break;
                }
            }
        }
        if (worst <= tol) {
            out.witness = c;
            out.residual = worst;
            out.determinant = reduce(c[0] * c[3] - c[1] * c[2], d) == reduce(1, d) ? 1 : -1;
            return out;
        }
        out.residual = std::min(out.residual, worst);
    }
    return out;
}

AlignmentReport check_alignment_c2(const FiducialVector &fid_n, const FiducialVector &fid_d, std::int64_t d,
                                   double tol) {
    if (fid_d.dim() != d) {
        throw DimensionMismatch("check_alignment_c2: second fiducial must live in dimension d = " + std::to_string(d));
    }
    AlignmentReport rep = check_alignment_c1(fid_n, d, tol);
    const WitnessSearch found = find_alignment_witness(scaled_overlaps(fid_n), scaled_overlaps(fid_d), d, tol);
    rep.candidates_tested = found.candidates_tested;
    rep.condition2_pass = found.witness.has_value();
    rep.condition2_max_residual = found.residual;
    if (!found.witness) {
        throw SearchSpaceExhausted("check_alignment_c2: none of " + std::to_string(found.candidates_tested) +
                                   " candidate matrices relates the phases within " + std::to_string(tol));
    }
    rep.witness_matrix = found.witness;
    rep.witness_determinant = found.determinant;
    return rep;
}

namespace {

struct PiLattice {
    std::int64_t step;
    std::int64_t count;
    double weight;
};

PiLattice pi_lattice(std::int64_t d, int which) {
    if (which == 1) {
        return {d - 2, d, static_cast<double>(d - 1) / (2.0 * static_cast<double>(d))};
    }
    if (which == 2) {
        return {d, d - 2, static_cast<double>(d - 1) / (2.0 * static_cast<double>(d - 2))};
    }
    throw std::invalid_argument("projector_pi: which must be 1 or 2");
}

ComplexMatrix assemble_pi(const FiducialVector &fid, std::int64_t d, int which) {
    const PiLattice lat = pi_lattice(d, which);
    const std::int64_t n = fid.dim();
    ComplexMatrix P = ComplexMatrix::Zero(n, n);
    for (std::int64_t a = 0; a < lat.count; ++a) {
        for (std::int64_t b = 0; b < lat.count; ++b) {
            const ComplexVector v = apply_displacement({lat.step * a, lat.step * b, n}, fid.amplitudes());
            P.noalias() += v * v.adjoint();
        }
    }
    return lat.weight * P;
}

}  // namespace

std::int64_t expected_pi_rank(std::int64_t d, int which) {
    if (which != 1 && which != 2) {
        throw std::invalid_argument("expected_pi_rank: which must be 1 or 2");
    }
    return which == 1 ? d * (d - 1) / 2 : (d - 1) * (d - 2) / 2;
}

PiResult projector_pi(const FiducialVector &fid, std::int64_t d, int which) {
    require_aligned_dim(fid, d);
    PiResult out;
    out.which = which;
    out.matrix = assemble_pi(fid, d, which);
    out.trace = out.matrix.trace().real();
    out.rank = std::llround(out.trace);
    out.idempotency_residual = (out.matrix * out.matrix - out.matrix).norm();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(out.matrix, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    out.eigen_rank = static_cast<std::int64_t>((ev.array() > 0.5).count());
    out.rank_consistent = std::abs(out.trace - static_cast<double>(out.rank)) < 1e-6 && out.rank == out.eigen_rank;
    return out;
}

double pi_expansion_crosscheck(const FiducialVector &fid, std::int64_t d) {
    require_aligned_dim(fid, d);
    const std::int64_t n = fid.dim();
    const ComplexMatrix direct = assemble_pi(fid, d, 1);
    ComplexMatrix expanded = ComplexMatrix::Zero(n, n);
    const ComplexMatrix q = orbit_overlaps(fid);
    for (std::int64_t a = 0; a < d - 2; ++a) {
        for (std::int64_t b = 0; b < d - 2; ++b) {
            expanded += q(d * a, d * b) * displacement(n, -d * a, -d * b);
        }
    }
    expanded *= static_cast<double>(d * (d - 1)) / (2.0 * static_cast<double>(n));
    return (expanded - direct).norm();
}

std::pair<int, DisplacementIndex> block_parity_target(std::int64_t d, int j) {
    const std::int64_t n2 = (d - 2) / 2;
    const int s = n2 % 2 != 0 ? 1 : -1;
    switch (j) {
        case 0:
            return {-s, {0, 0, n2}};
        case 1:
            return {s, {0, 1, n2}};
        case 2:
            return {s, {-1, 0, n2}};
        case 3:
            return {s, {-1, 1, n2}};
        default:
            throw std::out_of_range("block_parity_target: block index must lie in [0, 4)");
    }
}

namespace {

void require_even_aligned_dim(const FiducialVector &fid, std::int64_t d) {
    if (d < 4 || d % 2 != 0) {
        throw DimensionError("d must be even and at least 4, got " + std::to_string(d));
    }
    require_aligned_dim(fid, d);
}

}  // namespace

void BlockParityReport::require() const {
    for (int j = 0; j < 4; ++j) {
        if (!(residuals[j] <= tol)) {
            throw BlockMismatch("block " + std::to_string(j + 1) + " of the first projector deviates by " +
                                std::to_string(residuals[j]));
        }
    }
}

BlockParityReport pi_block_parity_check(const FiducialVector &fid, std::int64_t d, double tol) {
    require_even_aligned_dim(fid, d);
    BlockParityReport rep;
    rep.d = d;
    rep.n1 = d / 2;
    rep.n2 = (d - 2) / 2;
    rep.second_factor_odd = rep.n2 % 2 != 0;
    rep.tol = tol;

    const std::int64_t n = fid.dim();
    const ComplexMatrix U = intertwiner(n);
    const ComplexMatrix rotated = U.adjoint() * assemble_pi(fid, d, 1) * U;
    const BlockDecomposition blocks{n};
    const TensorSplit split{rep.n1, rep.n2};
    const ComplexMatrix I1 = ComplexMatrix::Identity(rep.n1, rep.n1);
    const ComplexMatrix I2 = ComplexMatrix::Identity(rep.n2, rep.n2);
    rep.pass = true;
    for (int j = 0; j < 4; ++j) {
        const auto [sign, label] = block_parity_target(d, j);
        const ComplexMatrix target = 0.5 * kron(I1, I2 + static_cast<double>(sign) * displaced_parity(label));
        rep.residuals[j] = (split.to_product(blocks.block(rotated, j)) - target).norm();
        rep.pass = rep.pass && rep.residuals[j] <= tol;
    }
    return rep;
}

MarginalSpectra marginal_spectra(const FiducialVector &fid, std::int64_t d) {
    require_even_aligned_dim(fid, d);
    const std::int64_t n = fid.dim();
    const std::int64_t n1 = d / 2;
    const std::int64_t n2 = (d - 2) / 2;
    const std::int64_t m = n / 4;
    const ComplexVector rotated = intertwiner(n).adjoint() * fid.amplitudes();
    const TensorSplit split{n1, n2};
    const double scale = static_cast<double>(d - 1);

    auto spectrum = [](const ComplexMatrix &A) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(A, Eigen::EigenvaluesOnly);
        std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
        std::sort(ev.begin(), ev.end(), std::greater<>());
        return ev;
    };
    auto nonzero = [](std::vector<double> ev) {
        ev.erase(std::remove_if(ev.begin(), ev.end(), [](double x) { return x < 1e-9; }), ev.end());
        return ev;
    };

    MarginalSpectra out;
    for (int j = 0; j < 4; ++j) {
        const ComplexVector w = split.isometry() * rotated.segment(j * m, m);
        const ComplexMatrix rho = w * w.adjoint();
        std::vector<double> right = spectrum(scale * partial_trace_first(rho, n1, n2));
        std::vector<double> left = spectrum(scale * partial_trace_second(rho, n1, n2));
        const std::size_t len = std::max(right.size(), left.size());
        right.resize(len, 0.0);
        left.resize(len, 0.0);
        for (std::size_t i = 0; i < len; ++i) {
            out.max_mismatch = std::max(out.max_mismatch, std::abs(right[i] - left[i]));
        }
        out.right[j] = nonzero(std::move(right));
        out.left[j] = nonzero(std::move(left));
    }
    return out;
}

void FramePartition::require() const {
    if (pass) {
        return;
    }
    std::ostringstream msg;
    msg << (mode == FrameMode::Coarse ? "coarse" : "fine") << " partition failed";
    if (!covers_orbit) {
        msg << "; frames do not partition the orbit";
    }
    for (const Frame &f : frames) {
        if (!f.pass) {
            msg << "; coset (" << f.shift.first << "," << f.shift.second << ") rank " << f.rank << " tightness "
                << f.tightness_residual << " equiangularity " << f.equiangularity_residual;
        }
    }
    throw PartitionFailure(msg.str());
}

FramePartition extract_frames(const FiducialVector &fid, std::int64_t d, FrameMode mode, double tol) {
    require_aligned_dim(fid, d);
    const std::int64_t n = fid.dim();
    FramePartition part;
    part.mode = mode;
    part.d = d;
    part.tol = tol;
    const bool coarse = mode == FrameMode::Coarse;
    const std::int64_t step = coarse ? d - 2 : d;
    const std::int64_t count = coarse ? d : d - 2;
    const std::int64_t shifts = coarse ? d - 2 : d;
    part.expected_rank = expected_pi_rank(d, coarse ? 1 : 2);
    part.vectors_per_frame = count * count;

    const double m = static_cast<double>(part.vectors_per_frame);
    const double r = static_cast<double>(part.expected_rank);
    const double overlap_target = (m - r) / (r * (m - 1.0));

    std::vector<int> hits(static_cast<std::size_t>(n * n), 0);
    part.pass = true;
    for (std::int64_t s = 0; s < shifts; ++s) {
        for (std::int64_t t = 0; t < shifts; ++t) {
            Frame f;
            f.shift = {s, t};
            std::vector<ComplexVector> vecs;
            for (std::int64_t a = 0; a < count; ++a) {
                for (std::int64_t b = 0; b < count; ++b) {
                    const DisplacementIndex idx{step * a + s, step * b + t, n};
                    f.indices.push_back(idx);
                    ++hits[static_cast<std::size_t>(idx.a * n + idx.b)];
                    vecs.push_back(apply_displacement(idx, fid.amplitudes()));
                }
            }
            ComplexMatrix S = ComplexMatrix::Zero(n, n);
            for (const ComplexVector &v : vecs) {
                S.noalias() += v * v.adjoint();
            }
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(S);
            const auto &ev = solver.eigenvalues();
            const double cutoff = 1e-6 * ev.maxCoeff();
            ComplexMatrix span = ComplexMatrix::Zero(n, n);
            for (Eigen::Index i = 0; i < ev.size(); ++i) {
                if (ev(i) > cutoff) {
                    ++f.rank;
                    span.noalias() += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
                }
            }
            f.tightness_residual = (static_cast<double>(f.rank) / m * S - span).norm();
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                for (std::size_t k = i + 1; k < vecs.size(); ++k) {
                    const double o = std::norm(vecs[i].dot(vecs[k]));
                    f.equiangularity_residual = std::max(f.equiangularity_residual, std::abs(o - overlap_target));
                }
            }
            f.pass = f.rank == part.expected_rank && f.tightness_residual <= tol && f.equiangularity_residual <= tol;
            part.pass = part.pass && f.pass;
            part.frames.push_back(std::move(f));
        }
    }
    part.covers_orbit = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    part.pass = part.pass && part.covers_orbit;
    return part;
}

ComplexMatrix block_symmetry_unitary(std::int64_t d) {
    if (d < 4 || d % 2 != 0) {
        throw DimensionError("block_symmetry_unitary: d must be even and at least 4, got " + std::to_string(d));
    }
    const std::int64_t n = d * (d - 2);
    const std::int64_t n1 = d / 2;
    const std::int64_t n2 = (d - 2) / 2;
    const std::int64_t m = n / 4;
    const TensorSplit split{n1, n2};
    const ComplexMatrix I1 = ComplexMatrix::Identity(n1, n1);
    const std::array<std::pair<double, DisplacementIndex>, 4> pattern{{
        {1.0, {0, 0, n2}},
        {-1.0, {0, 1, n2}},
        {-1.0, {-1, 0, n2}},
        {-1.0, {-1, 1, n2}},
    }};
    ComplexMatrix Ub = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < 4; ++j) {
        Ub.block(j * m, j * m, m, m) =
            pattern[j].first * split.from_product(kron(I1, displaced_parity(pattern[j].second)));
    }
    return Ub;
}

void SymmetryReport::require() const {
    static constexpr std::array<const char *, 4> names{"order two", "fixes the fiducial", "permutes the orbit",
                                                       "block form"};
    for (int i = 0; i < 4; ++i) {
        if (!clause_pass[i]) {
            throw SymmetryFailure(std::string("symmetry clause failed: ") + names[i]);
        }
    }
}

SymmetryReport verify_symmetry(const FiducialVector &fid, std::int64_t d, double square_tol, double fixed_tol,
                               double block_tol) {
    require_even_aligned_dim(fid, d);
    const std::int64_t n = fid.dim();
    SymmetryReport rep;
    rep.d = d;
    const SymplecticMatrix Fb = symmetry_matrix(d);
    const ComplexMatrix V = symplectic_unitary(Fb);

    rep.square_residual = phase_aligned_distance(ComplexMatrix(V * V), ComplexMatrix(ComplexMatrix::Identity(n, n)));
    const ComplexVector &psi = fid.amplitudes();
    rep.fixed_point_residual = phase_aligned_distance(ComplexVector(V * psi), psi);

    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            const ComplexVector moved = V * apply_displacement({a, b, n}, psi);
            const ComplexVector expected = apply_displacement(Fb.apply({a, b, n}), psi);
            const double dist = (moved * moved.adjoint() - expected * expected.adjoint()).norm();
            rep.permutation_residual = std::max(rep.permutation_residual, dist);
        }
    }

    const ComplexMatrix U = intertwiner(n);
    rep.block_form_residual = phase_aligned_distance(ComplexMatrix(U.adjoint() * V * U), block_symmetry_unitary(d));

    rep.clause_pass = {rep.square_residual <= square_tol, rep.fixed_point_residual <= fixed_tol,
                       rep.permutation_residual <= fixed_tol, rep.block_form_residual <= block_tol};
    rep.pass = std::all_of(rep.clause_pass.begin(), rep.clause_pass.end(), [](bool x) { return x; });
    return rep;
}

}  // namespace sic
