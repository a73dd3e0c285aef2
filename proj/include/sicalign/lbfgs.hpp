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

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <limits>

namespace sic::optim {

struct LbfgsOptions {
    int memory = 10;
    std::int64_t max_iterations = 1000;
    double gradient_tol = 1e-13;  // on the infinity norm
    double value_target = -std::numeric_limits<double>::infinity();
    double c1 = 1e-4;
    double c2 = 0.9;
    int max_line_search = 40;
    int stall_window = 20;  // iterations without relative progress above 1e-15
};

enum class LbfgsStop { Gradient, Target, MaxIterations, LineSearch, Stalled };

struct LbfgsResult {
    double value = 0.0;
    std::int64_t iterations = 0;
    std::int64_t evaluations = 0;
    LbfgsStop stop = LbfgsStop::MaxIterations;
};

/// Returns f(x) and writes the gradient into g.
using Objective = std::function<double(const Eigen::VectorXd &x, Eigen::VectorXd &g)>;
/// Maps an accepted iterate back onto the feasible set in place.
using Retraction = std::function<void(Eigen::VectorXd &x)>;

/// Limited-memory BFGS with a strong-Wolfe line search. After every accepted
/// step the optional retraction is applied and the objective re-evaluated.
LbfgsResult lbfgs_minimize(const Objective &f, Eigen::VectorXd &x, const LbfgsOptions &opts = {},
                           const Retraction &retract = {});

}  // namespace sic::optim
