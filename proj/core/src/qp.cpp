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

#include "optstream/qp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

struct Evaluation {
  double objective;
  std::vector<double> gradient;
};

void evaluate(std::span<const QpRow> rows, const std::vector<double>& y,
              Evaluation* out) {
  out->objective = 0.0;
  std::fill(out->gradient.begin(), out->gradient.end(), 0.0);
  for (const QpRow& row : rows) {
    double s = -row.target;
    for (int v : row.vars) s += y[v];
    out->objective += row.weight * s * s;
    const double g = 2.0 * row.weight * s;
    for (int v : row.vars) out->gradient[v] += g;
  }
}

double kkt_residual(const std::vector<double>& y,
                    const std::vector<double>& gradient) {
  double worst = 0.0;
  for (std::size_t v = 0; v < y.size(); ++v) {
    const double r = y[v] - std::max(y[v] - gradient[v], 0.0);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

QpSolution solve_consistency_qp(int num_vars, std::span<const QpRow> rows,
                                const QpOptions& options) {
  if (num_vars < 1) {
    throw InvalidParameterError("solve_consistency_qp: num_vars must be >= 1");
  }
  std::vector<char> covered(static_cast<std::size_t>(num_vars), 0);
  std::vector<double> lipschitz(static_cast<std::size_t>(num_vars), 0.0);
  for (const QpRow& row : rows) {
    if (!(row.weight > 0.0) || !std::isfinite(row.weight)) {
      throw InvalidParameterError(
          "solve_consistency_qp: row weights must be finite and > 0");
    }
    if (!std::isfinite(row.target)) {
      throw InvalidParameterError(
          "solve_consistency_qp: row targets must be finite");
    }
    for (int v : row.vars) {
      if (v < 0 || v >= num_vars) {
        throw InvalidParameterError(
            "solve_consistency_qp: variable id out of range");
      }
      covered[v] = 1;
      lipschitz[v] += row.weight * static_cast<double>(row.vars.size());
    }
  }
  for (int v = 0; v < num_vars; ++v) {
    if (!covered[v]) {
      throw InvalidParameterError(
          "solve_consistency_qp: variable " + std::to_string(v) +
          " appears in no row; the minimizer would not be unique");
    }
  }
  // Row-sum bound on the largest eigenvalue of the Hessian 2*A^T W A.
  const double big_l =
      2.0 * *std::max_element(lipschitz.begin(), lipschitz.end());
  const double step = 1.0 / big_l;

  std::vector<double> y(static_cast<std::size_t>(num_vars), 0.0);
  if (!options.warm_start.empty()) {
    if (options.warm_start.size() != static_cast<std::size_t>(num_vars)) {
      throw InvalidParameterError(
          "solve_consistency_qp: warm start length mismatch");
    }
    for (int v = 0; v < num_vars; ++v) {
      y[v] = std::max(options.warm_start[v], 0.0);
    }
  }

  Evaluation eval{0.0, std::vector<double>(static_cast<std::size_t>(num_vars))};
  Evaluation eval_z = eval;

  evaluate(rows, y, &eval);

  QpSolution best;
  best.x = y;
  best.objective = eval.objective;
  best.kkt_residual = kkt_residual(y, eval.gradient);
  best.iterations = 0;
  if (best.kkt_residual <= options.kkt_tol) {
    best.converged = true;
    return best;
  }

  std::vector<double> z = y;
  std::vector<double> y_prev = y;
  double f_prev = eval.objective;
  double t_momentum = 1.0;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    evaluate(rows, z, &eval_z);
    for (int v = 0; v < num_vars; ++v) {
      y[v] = std::max(z[v] - step * eval_z.gradient[v], 0.0);
    }
    evaluate(rows, y, &eval);
    const double residual = kkt_residual(y, eval.gradient);

    if (eval.objective <= best.objective || residual < best.kkt_residual) {
      best.x = y;
      best.objective = eval.objective;
      best.kkt_residual = residual;
    }
    best.iterations = iter;
    if (residual <= options.kkt_tol) {
      best.x = y;
      best.objective = eval.objective;
      best.kkt_residual = residual;
      best.converged = true;
      return best;
    }

    if (!options.accelerated) {
      z = y;
    } else if (eval.objective > f_prev) {
      // Momentum overshoot: restart from the current point.
      t_momentum = 1.0;
      z = y;
    } else {
      const double t_next =
          0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
      const double beta = (t_momentum - 1.0) / t_next;
      for (int v = 0; v < num_vars; ++v) {
        z[v] = y[v] + beta * (y[v] - y_prev[v]);
      }
      t_momentum = t_next;
    }
    y_prev = y;
    f_prev = eval.objective;
  }

  if (options.throw_on_nonconvergence) {
    throw SolverError(
        "solve_consistency_qp: KKT residual " +
            std::to_string(best.kkt_residual) + " above tolerance " +
            std::to_string(options.kkt_tol) + " after " +
            std::to_string(options.max_iterations) + " iterations",
        best.kkt_residual);
  }
  return best;
}

}  // namespace optstream
