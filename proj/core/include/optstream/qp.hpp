// Copyright 2026 The OptStream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPTSTREAM_QP_HPP_
#define OPTSTREAM_QP_HPP_

#include <span>
#include <vector>

namespace optstream {

// One weighted least-squares term: weight * (sum_{v in vars} y_v - target)^2.
// vars holds zero-based variable ids.
struct QpRow {
  std::vector<int> vars;
  double weight = 1.0;
  double target = 0.0;
};

struct QpOptions {
  double kkt_tol = 1e-6;
  int max_iterations = 100000;
  // Nesterov momentum with adaptive restart on top of the 1/L projected
  // gradient step. Reaches the same optimum as the plain iteration; turning
  // it off reproduces the textbook method one step at a time.
  bool accelerated = true;
  std::span<const double> warm_start{};
  // When the iteration cap is hit: throw SolverError (true) or return the
  // best iterate with converged == false (false).
  bool throw_on_nonconvergence = true;
};

struct QpSolution {
  std::vector<double> x;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimizes sum_r weight_r * (sum_{v in r} y_v - target_r)^2 subject to
// y >= 0, by projected gradient descent with fixed step 1/L, where L upper
// bounds the largest Hessian eigenvalue via the row-sum norm computed from
// the row structure. Convergence is declared when the KKT residual
// max_v |y_v - max(y_v - grad_v, 0)| drops to kkt_tol. The problem must
// give every variable at least one row, otherwise the objective is not
// strictly convex in it and the result would be start-dependent.
QpSolution solve_consistency_qp(int num_vars, std::span<const QpRow> rows,
                                const QpOptions& options = {});

}  // namespace optstream

#endif  // OPTSTREAM_QP_HPP_
