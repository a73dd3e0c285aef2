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

#include "sicalign/fidsearch.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <thread>

#include "sicalign/errors.hpp"
#include "sicalign/lbfgs.hpp"

namespace sic {

double frame_potential_floor(std::int64_t n) { return 2.0 * static_cast<double>(n) / static_cast<double>(n + 1); }

double frame_potential(const FiducialVector &fid) {
    OverlapEngine engine{fid.dim()};
    return engine.frame_potential(fid.amplitudes(), nullptr);
}

namespace {

void require_penalty_dim(std::int64_t n, std::int64_t d) {
    if (d < 3 || n != d * (d - 2)) {
        throw DimensionMismatch("alignment penalty: dimension " + std::to_string(n) + " is not d(d-2) for d = " +
                                std::to_string(d));
    }
}

// Condition-one lattice points and their targets.
void penalty_terms(std::int64_t n, std::int64_t d, std::vector<DisplacementIndex> &idx, std::vector<cplx> &targets) {
    for (std::int64_t a = 0; a < d - 2; ++a) {
        for (std::int64_t b = 0; b < d - 2; ++b) {
            if (a == 0 && b == 0) {
                continue;
            }
            idx.push_back({d * a, d * b, n});
            targets.push_back(alignment_target(d, a, b));
        }
    }
}

}  // namespace

double alignment_penalty(const FiducialVector &fid, std::int64_t d) {
    const std::int64_t n = fid.dim();
    require_penalty_dim(n, d);
    std::vector<DisplacementIndex> idx;
    std::vector<cplx> targets;
    penalty_terms(n, d, idx, targets);
    const double scale = std::sqrt(static_cast<double>(n + 1));
    double total = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const cplx q = fid.amplitudes().dot(apply_displacement(idx[i], fid.amplitudes()));
        total += std::norm(scale * q - targets[i]);
    }
    return total;
}

SearchObjective::SearchObjective(std::int64_t n, std::int64_t align_d, double weight)
    : n_(n), align_d_(align_d), weight_(weight), engine_(n) {
    if (align_d_ != 0) {
        require_penalty_dim(n, align_d_);
        penalty_terms(n, align_d_, penalty_indices_, penalty_targets_);
    }
}

double SearchObjective::value(const ComplexVector &psi, ComplexVector *grad) {
    const double norm = psi.norm();
    const ComplexVector phi = psi / norm;
    ComplexVector g;
    double total = engine_.frame_potential(phi, grad != nullptr ? &g : nullptr);
    if (weight_ != 0.0 && !penalty_indices_.empty()) {
        const double scale = std::sqrt(static_cast<double>(n_ + 1));
        for (std::size_t i = 0; i < penalty_indices_.size(); ++i) {
            const ComplexVector moved = apply_displacement(penalty_indices_[i], phi);
            const cplx e = scale * phi.dot(moved) - penalty_targets_[i];
            total += weight_ * std::norm(e);
            if (grad != nullptr) {
                const ComplexVector back = apply_displacement(penalty_indices_[i].negated(), phi);
                g += (weight_ * scale) * (std::conj(e) * moved + e * back);
            }
        }
    }
    if (grad != nullptr) {
        // Project out the radial direction and rescale for phi = psi / |psi|.
        const double radial = phi.dot(g).real();
        *grad = (g - radial * phi) / norm;
    }
    return total;
}

void SearchConfig::validate() const {
    if (dim < 1) {
        throw std::invalid_argument("SearchConfig: dimension must be positive");
    }
    if (!(convergence_threshold > 0.0)) {
        throw std::invalid_argument("SearchConfig: convergence threshold must be positive");
    }
    if (restarts < 1) {
        throw std::invalid_argument("SearchConfig: at least one restart is required");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("SearchConfig: iteration budget must be positive");
    }
    if (!(penalty_weight >= 0.0)) {
        throw std::invalid_argument("SearchConfig: penalty weight must be nonnegative");
    }
    if (align_d && (*align_d < 3 || *align_d * (*align_d - 2) != dim)) {
        throw std::invalid_argument("SearchConfig: alignment d = " + std::to_string(*align_d) +
                                    " does not satisfy d(d-2) = " + std::to_string(dim));
    }
}

void SearchResult::require_converged() const {
    if (!converged) {
        std::ostringstream msg;
        msg << "search did not converge in dimension " << fiducial.dim() << " after " << restarts_run
            << " restarts; best frame potential " << frame_potential;
        throw NotConverged(msg.str());
    }
}

ComplexMatrix zauner_subspace(std::int64_t n) {
    const ComplexMatrix raw = symplectic_unitary(SymplecticMatrix{0, -1, 1, -1, n});
    const cplx c = (raw * raw * raw).trace() / static_cast<double>(n);
    const ComplexMatrix V = raw * std::pow(c, -1.0 / 3.0);
    const ComplexMatrix I = ComplexMatrix::Identity(n, n);
    ComplexMatrix best;
    double best_rank = -1.0;
    for (int k = 0; k < 3; ++k) {
        const cplx lam = std::conj(unit_root(k, 3));
        const ComplexMatrix P = (I + lam * V + lam * lam * V * V) / 3.0;
        const double rank = P.trace().real();
        if (rank > best_rank + 0.5) {
            best_rank = rank;
            best = P;
        }
    }
    const ComplexMatrix herm = 0.5 * (best + best.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    const auto r = static_cast<Eigen::Index>(std::llround(best_rank));
    // Eigenvalues ascend, so the projector's range is the last r columns.
    return solver.eigenvectors().rightCols(r);
}

namespace {

// Gauss-Newton with Levenberg damping on the SIC equations
// |<psi|D psi>|^2 = 1/(n+1), the alignment equations and |psi|^2 = 1.
class SicPolisher {
   public:
    SicPolisher(std::int64_t n, std::int64_t align_d) : n_(n) {
        if (align_d != 0) {
            penalty_terms(n, align_d, align_idx_, align_targets_);
        }
    }

    std::int64_t run(ComplexVector &psi, int max_iterations = 60) {
        double cost = residuals(psi, nullptr).squaredNorm();
        double lambda = 1e-6;
        std::int64_t iters = 0;
        for (; iters < max_iterations && cost > 1e-30; ++iters) {
            Eigen::MatrixXd J;
            const Eigen::VectorXd r = residuals(psi, &J);
            const Eigen::MatrixXd JtJ = J.transpose() * J;
            const Eigen::VectorXd Jtr = J.transpose() * r;
            bool improved = false;
            for (int attempt = 0; attempt < 12; ++attempt) {
                Eigen::MatrixXd A = JtJ;
                A.diagonal().array() += lambda * (JtJ.diagonal().array() + 1e-12);
                const Eigen::VectorXd step = A.ldlt().solve(-Jtr);
                ComplexVector trial = psi;
                for (Eigen::Index i = 0; i < n_; ++i) {
                    trial(i) += cplx{step(i), step(n_ + i)};
                }
                const double trial_cost = residuals(trial, nullptr).squaredNorm();
                if (std::isfinite(trial_cost) && trial_cost < cost) {
                    psi = trial;
                    cost = trial_cost;
                    lambda = std::max(lambda / 10.0, 1e-12);
                    improved = true;
                    break;
                }
                lambda *= 10.0;
            }
            if (!improved) {
                break;
            }
        }
        psi.normalize();
        return iters;
    }

    double cost(const ComplexVector &psi) const { return residuals(psi, nullptr).squaredNorm(); }

   private:
    // Row of the real Jacobian for a residual whose conj(psi)-gradient is g.
    void put_row(Eigen::MatrixXd &J, Eigen::Index row, const ComplexVector &g) const {
        J.block(row, 0, 1, n_) = 2.0 * g.real().transpose();
        J.block(row, n_, 1, n_) = 2.0 * g.imag().transpose();
    }

    Eigen::VectorXd residuals(const ComplexVector &psi, Eigen::MatrixXd *J) const {
        const Eigen::Index rows = n_ * n_ - 1 + 2 * static_cast<Eigen::Index>(align_idx_.size()) + 1;
        Eigen::VectorXd r(rows);
        if (J != nullptr) {
            J->resize(rows, 2 * n_);
        }
        const double target = 1.0 / static_cast<double>(n_ + 1);
        const double scale = std::sqrt(static_cast<double>(n_ + 1));
        Eigen::Index row = 0;
        for (std::int64_t a = 0; a < n_; ++a) {
            for (std::int64_t b = 0; b < n_; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const ComplexVector moved = apply_displacement({a, b, n_}, psi);
                const cplx q = psi.dot(moved);
                r(row) = std::norm(q) - target;
                if (J != nullptr) {
                    const ComplexVector back = apply_displacement({-a, -b, n_}, psi);
                    put_row(*J, row, std::conj(q) * moved + q * back);
                }
                ++row;
            }
        }
        for (std::size_t i = 0; i < align_idx_.size(); ++i) {
            const ComplexVector moved = apply_displacement(align_idx_[i], psi);
            const cplx e = scale * psi.dot(moved) - align_targets_[i];
            r(row) = e.real();
            r(row + 1) = e.imag();
            if (J != nullptr) {
                const ComplexVector back = apply_displacement(align_idx_[i].negated(), psi);
                put_row(*J, row, (0.5 * scale) * (moved + back));
                put_row(*J, row + 1, cplx{0.0, -0.5 * scale} * (moved - back));
            }
            row += 2;
        }
        r(row) = psi.squaredNorm() - 1.0;
        if (J != nullptr) {
            put_row(*J, row, psi);
        }
        return r;
    }

    std::int64_t n_;
    std::vector<DisplacementIndex> align_idx_;
    std::vector<cplx> align_targets_;
};

struct RunOutcome {
    ComplexVector psi;
    double frame_potential = 0.0;
    double penalty = 0.0;
    double objective = 0.0;
    std::int64_t iterations = 0;
    bool converged = false;
};

RunOutcome single_run(const SearchConfig &cfg, std::int64_t index, const ComplexMatrix *basis) {
    const std::int64_t n = cfg.dim;
    const std::int64_t align_d = cfg.align_d.value_or(0);
    const std::int64_t k = basis != nullptr ? basis->cols() : n;
    const double floor = frame_potential_floor(n);

    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffU), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(2 * k);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x(i) = normal(gen);
    }

    SearchObjective objective{n, cfg.penalty_weight > 0.0 ? align_d : 0, cfg.penalty_weight};
    auto to_psi = [&](const Eigen::VectorXd &v) {
        ComplexVector y(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            y(i) = cplx{v(i), v(k + i)};
        }
        return basis != nullptr ? ComplexVector(*basis * y) : y;
    };
    const optim::Objective f = [&](const Eigen::VectorXd &v, Eigen::VectorXd &g) {
        ComplexVector grad;
        const double val = objective.value(to_psi(v), &grad);
        if (basis != nullptr) {
            grad = basis->adjoint() * grad;
        }
        g.resize(2 * k);
        g.head(k) = 2.0 * grad.real();
        g.tail(k) = 2.0 * grad.imag();
        return val;
    };
    const optim::Retraction unit = [](Eigen::VectorXd &v) { v.normalize(); };

    std::vector<double> weights{cfg.penalty_weight};
    if (align_d != 0 && cfg.penalty_weight > 0.0) {
        weights = {cfg.penalty_weight, 10.0 * cfg.penalty_weight, 100.0 * cfg.penalty_weight};
    }
    RunOutcome out;
    const std::int64_t stage_budget = std::max<std::int64_t>(1, cfg.max_iterations / static_cast<std::int64_t>(weights.size()));
    for (double w : weights) {
        objective.set_weight(w);
        optim::LbfgsOptions opts;
        opts.max_iterations = stage_budget;
        opts.value_target = floor + 1e-3 * cfg.convergence_threshold;
        const optim::LbfgsResult res = optim::lbfgs_minimize(f, x, opts, unit);
        out.iterations += res.iterations;
        if (res.value <= opts.value_target) {
            break;
        }
    }

    out.psi = to_psi(x).normalized();
    objective.set_weight(cfg.penalty_weight);
    const FiducialVector current = FiducialVector::normalized(out.psi);
    if (frame_potential(current) - floor < 1e-3) {
        ComplexVector polished = out.psi;
        SicPolisher polisher{n, cfg.penalty_weight > 0.0 ? align_d : 0};
        out.iterations += polisher.run(polished);
        // Near the floor the frame potential is flat to rounding, so compare
        // the equation residuals instead.
        if (polisher.cost(polished) <= polisher.cost(out.psi)) {
            out.psi = polished;
        }
    }
    const FiducialVector fid = FiducialVector::normalized(out.psi);
    out.psi = fid.amplitudes();
    out.frame_potential = frame_potential(fid);
    out.penalty = align_d != 0 ? alignment_penalty(fid, align_d) : 0.0;
    out.objective = out.frame_potential + cfg.penalty_weight * out.penalty;
    out.converged = out.objective - floor < cfg.convergence_threshold;
    return out;
}

}  // namespace

SearchResult find_fiducial(const SearchConfig &cfg) {
    cfg.validate();
    const ComplexMatrix basis = cfg.use_zauner_subspace ? zauner_subspace(cfg.dim) : ComplexMatrix{};
    const ComplexMatrix *basis_ptr = cfg.use_zauner_subspace ? &basis : nullptr;

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, cfg.restarts));

    std::vector<RunOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
    std::int64_t done = 0;
    std::int64_t winner = -1;
    while (done < cfg.restarts && winner < 0) {
        const std::int64_t batch_end = std::min<std::int64_t>(cfg.restarts, done + threads);
        if (threads == 1) {
            outcomes[static_cast<std::size_t>(done)] = single_run(cfg, done, basis_ptr);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(batch_end - done));
            for (std::int64_t i = done; i < batch_end; ++i) {
                pool.emplace_back([&, i] {
                    try {
                        outcomes[static_cast<std::size_t>(i)] = single_run(cfg, i, basis_ptr);
                    } catch (...) {
                        errors[static_cast<std::size_t>(i - done)] = std::current_exception();
                    }
                });
            }
            for (std::thread &t : pool) {
                t.join();
            }
            for (const std::exception_ptr &e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        }
        for (std::int64_t i = done; i < batch_end; ++i) {
            if (outcomes[static_cast<std::size_t>(i)].converged) {
                winner = i;
                break;
            }
        }
        done = batch_end;
    }
    if (winner < 0) {
        winner = 0;
        for (std::int64_t i = 1; i < done; ++i) {
            if (outcomes[static_cast<std::size_t>(i)].objective < outcomes[static_cast<std::size_t>(winner)].objective) {
                winner = i;
            }
        }
    }

    const RunOutcome &best = outcomes[static_cast<std::size_t>(winner)];
    std::string label = "search n=" + std::to_string(cfg.dim) + " seed=" + std::to_string(cfg.seed) +
                        " restart=" + std::to_string(winner);
    SearchResult result{FiducialVector(best.psi, std::move(label)),
                        best.frame_potential,
                        cfg.align_d ? std::optional<double>(best.penalty) : std::nullopt,
                        best.iterations,
                        best.converged,
                        winner,
                        done};
    return result;
}

void save_fiducial(const FiducialVector &fid, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::filesystem::filesystem_error("save_fiducial: cannot open for writing", path,
                                                std::make_error_code(std::errc::permission_denied));
    }
    auto put = [&out](double v) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
        out.write(buf, res.ptr - buf);
    };
    out << fid.dim() << '\n';
    for (Eigen::Index i = 0; i < fid.dim(); ++i) {
        put(fid.amplitudes()(i).real());
        out << ' ';
        put(fid.amplitudes()(i).imag());
        out << '\n';
    }
    if (!out) {
        throw std::filesystem::filesystem_error("save_fiducial: write failed", path,
                                                std::make_error_code(std::errc::io_error));
    }
}

namespace {

bool is_blank(const std::string &s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

template <typename T>
T parse_token(const std::string &tok, std::size_t line, const char *what) {
    T value{};
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError(line, std::string("cannot parse ") + what + " from '" + tok + "'");
    }
    return value;
}

std::vector<std::string> tokens(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) {
        out.push_back(t);
    }
    return out;
}

}  // namespace

FiducialVector load_fiducial(const std::filesystem::path &path, std::vector<std::string> *warnings) {
    std::ifstream in(path);
    if (!in) {
        throw std::filesystem::filesystem_error("load_fiducial: cannot open", path,
                                                std::make_error_code(std::errc::no_such_file_or_directory));
    }
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    while (!lines.empty() && is_blank(lines.back())) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ParseError(1, "missing dimension");
    }
    const std::vector<std::string> head = tokens(lines[0]);
    if (head.size() != 1) {
        throw ParseError(1, "expected a single dimension");
    }
    const auto n = parse_token<std::int64_t>(head[0], 1, "dimension");
    if (n < 1) {
        throw ParseError(1, "dimension must be positive");
    }
    if (static_cast<std::int64_t>(lines.size()) - 1 != n) {
        throw DimensionMismatch("load_fiducial: header declares " + std::to_string(n) + " amplitudes but the file has " +
                                std::to_string(lines.size() - 1));
    }
    ComplexVector amps(n);
    for (std::int64_t i = 0; i < n; ++i) {
        const std::size_t lineno = static_cast<std::size_t>(i) + 2;
        const std::vector<std::string> parts = tokens(lines[static_cast<std::size_t>(i) + 1]);
        if (parts.size() != 2) {
            throw ParseError(lineno, "expected 're im'");
        }
        amps(i) = cplx{parse_token<double>(parts[0], lineno, "real part"),
                       parse_token<double>(parts[1], lineno, "imaginary part")};
    }
    const double norm = amps.norm();
    const std::string label = path.filename().string();
    if (std::abs(norm - 1.0) <= 1e-12) {
        return FiducialVector(std::move(amps), label);
    }
    if (std::abs(norm - 1.0) <= 1e-6) {
        if (warnings != nullptr) {
            std::ostringstream msg;
            msg << path.string() << ": norm " << norm << " renormalized to 1";
            warnings->push_back(msg.str());
        }
        return FiducialVector::normalized(std::move(amps), label);
    }
    throw DimensionMismatch("load_fiducial: norm " + std::to_string(norm) + " is too far from 1");
}

}  // namespace sic
