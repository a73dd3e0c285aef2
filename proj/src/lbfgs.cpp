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

#include "sicalign/lbfgs.hpp"

#include <cmath>
#include <algorithm>
#include <deque>
#include <vector>

namespace sic::optim {

namespace {

struct Probe {
    double alpha = 0.0;
    double value = 0.0;
    double slope = 0.0;
};

// Minimizer of the cubic through two probes, or the midpoint when the
// interpolant is degenerate. Kept away from the interval ends.
double cubic_step(const Probe &lo, const Probe &hi) {
    const double left = std::min(lo.alpha, hi.alpha);
    const double right = std::max(lo.alpha, hi.alpha);
    const double width = right - left;
    const double mid = 0.5 * (left + right);
    const double d1 = lo.slope + hi.slope - 3.0 * (lo.value - hi.value) / (lo.alpha - hi.alpha);
    const double disc = d1 * d1 - lo.slope * hi.slope;
    if (!(disc >= 0.0) || !std::isfinite(disc)) {
        return mid;
    }
    const double d2 = std::copysign(std::sqrt(disc), hi.alpha - lo.alpha);
    const double denom = hi.slope - lo.slope + 2.0 * d2;
    if (denom == 0.0) {
        return mid;
    }
    const double a = hi.alpha - (hi.alpha - lo.alpha) * (hi.slope + d2 - d1) / denom;
    if (!std::isfinite(a) || a < left + 0.1 * width || a > right - 0.1 * width) {
        return mid;
    }
    return a;
}

class LineSearch {
   public:
    LineSearch(const Objective &f, const Eigen::VectorXd &x, const Eigen::VectorXd &p, double f0, double d0,
               const LbfgsOptions &opts, std::int64_t &evals)
        : f_(f), x_(x), p_(p), f0_(f0), d0_(d0), opts_(opts), evals_(evals) {}

    // Returns false when no strong-Wolfe point was found.
    bool run(double alpha0) {
        Probe prev{0.0, f0_, d0_};
        double alpha = alpha0;
        for (int i = 0; i < opts_.max_line_search; ++i) {
            const Probe cur = probe(alpha);
            if (!std::isfinite(cur.value) || cur.value > f0_ + opts_.c1 * alpha * d0_ ||
                (i > 0 && cur.value >= prev.value)) {
                return zoom(prev, cur);
            }
            if (std::abs(cur.slope) <= -opts_.c2 * d0_) {
                return accept(cur);
            }
            if (cur.slope >= 0.0) {
                return zoom(cur, prev);
            }
            prev = cur;
            alpha *= 2.0;
        }
        return false;
    }

    Eigen::VectorXd x_new;
    Eigen::VectorXd g_new;
    double f_new = 0.0;

   private:
    Probe probe(double alpha) {
        trial_x_ = x_ + alpha * p_;
        trial_g_.resize(x_.size());
        const double v = f_(trial_x_, trial_g_);
        ++evals_;
        return {alpha, v, trial_g_.dot(p_)};
    }

    bool accept(const Probe &pr) {
        x_new = trial_x_;
        g_new = trial_g_;
        f_new = pr.value;
        return true;
    }

    bool zoom(Probe lo, Probe hi) {
        for (int i = 0; i < opts_.max_line_search; ++i) {
            if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, std::abs(lo.alpha))) {
                break;
            }
            const Probe cur = probe(cubic_step(lo, hi));
            if (!std::isfinite(cur.value) || cur.value > f0_ + opts_.c1 * cur.alpha * d0_ || cur.value >= lo.value) {
                hi = cur;
                continue;
            }
            if (std::abs(cur.slope) <= -opts_.c2 * d0_) {
                return accept(cur);
            }
            if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) {
                hi = lo;
            }
            lo = cur;
        }
        // Fall back to the best sufficient-decrease point seen.
        if (lo.alpha > 0.0 && lo.value < f0_) {
            probe(lo.alpha);
            return accept(lo);
        }
        return false;
    }

    const Objective &f_;
    const Eigen::VectorXd &x_;
    const Eigen::VectorXd &p_;
    double f0_;
    double d0_;
    const LbfgsOptions &opts_;
    std::int64_t &evals_;
    Eigen::VectorXd trial_x_;
    Eigen::VectorXd trial_g_;
};

}  // namespace

LbfgsResult lbfgs_minimize(const Objective &f, Eigen::VectorXd &x, const LbfgsOptions &opts,
                           const Retraction &retract) {
    LbfgsResult res;
    Eigen::VectorXd g(x.size());
    if (retract) {
        retract(x);
    }
    double fx = f(x, g);
    ++res.evaluations;

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;
    int stalled = 0;
    bool fresh = true;

    for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
        if (fx <= opts.value_target) {
            res.stop = LbfgsStop::Target;
            res.value = fx;
            return res;
        }
        if (g.lpNorm<Eigen::Infinity>() < opts.gradient_tol) {
            res.stop = LbfgsStop::Gradient;
            res.value = fx;
            return res;
        }

        // Two-loop recursion.
        Eigen::VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd p = -q;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            p = -g;
            slope = -g.squaredNorm();
            fresh = true;
        }

        const double alpha0 = fresh ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;
        LineSearch ls(f, x, p, fx, slope, opts, res.evaluations);
        if (!ls.run(alpha0)) {
            if (!fresh) {
                s_hist.clear();
                y_hist.clear();
                rho_hist.clear();
                fresh = true;
                continue;
            }
            res.stop = LbfgsStop::LineSearch;
            res.value = fx;
            return res;
        }
        fresh = false;

        Eigen::VectorXd x_new = std::move(ls.x_new);
        Eigen::VectorXd g_new = std::move(ls.g_new);
        double f_new = ls.f_new;
        if (retract) {
            retract(x_new);
            f_new = f(x_new, g_new);
            ++res.evaluations;
        }

        Eigen::VectorXd s = x_new - x;
        Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-16 * s.norm() * y.norm() && sy > 0.0) {
            s_hist.push_back(std::move(s));
            y_hist.push_back(std::move(y));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        if (fx - f_new <= 1e-15 * std::max(1.0, std::abs(fx))) {
            ++stalled;
        } else {
            stalled = 0;
        }
        x = std::move(x_new);
        g = std::move(g_new);
        fx = f_new;
        if (stalled >= opts.stall_window) {
            res.iterations += 1;
            res.stop = LbfgsStop::Stalled;
            res.value = fx;
            return res;
        }
    }
    res.stop = LbfgsStop::MaxIterations;
    res.value = fx;
    return res;
}

}  // namespace sic::optim
