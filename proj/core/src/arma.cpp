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

#include "optstream/arma.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "optstream/error.hpp"

namespace optstream {
namespace {

constexpr double kBoxLimit = 0.9999;  // |phi|, |theta| stay inside this

double css_objective(std::span<const double> x, double c, double phi,
                     double theta) {
  const double violation = std::max(0.0, std::abs(phi) - kBoxLimit) +
                           std::max(0.0, std::abs(theta) - kBoxLimit);
  if (violation > 0.0) return 1e15 * (1.0 + violation);
  double e_prev = 0.0;
  double sum = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    const double e = x[t] - c - phi * x[t - 1] - theta * e_prev;
    sum += e * e;
    e_prev = e;
  }
  return sum;
}

}  // namespace

ArmaModel arma_fit(std::span<const double> x, const ArmaFitOptions& options) {
  const std::size_t n = x.size();
  if (n < 3) {
    throw InvalidParameterError("arma_fit: need at least 3 observations");
  }

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  double var = 0.0;
  double cov1 = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    var += (x[t] - mean) * (x[t] - mean);
    if (t > 0) cov1 += (x[t] - mean) * (x[t - 1] - mean);
  }
  if (var == 0.0) {
    // Constant input: the recursion is exact with zero innovations.
    return ArmaModel{x[0], 0.0, 0.0, 0.0};
  }

  const double phi0 = std::clamp(cov1 / var, -0.95, 0.95);
  const double c0 = mean * (1.0 - phi0);

  auto f = [&](const std::array<double, 3>& p) {
    return css_objective(x, p[0], p[1], p[2]);
  };

  // Nelder-Mead over (c, phi, theta).
  std::array<std::array<double, 3>, 4> simplex;
  simplex[0] = {c0, phi0, 0.0};
  simplex[1] = {c0 + 0.1 * (std::abs(c0) + 1.0), phi0, 0.0};
  simplex[2] = {c0, std::clamp(phi0 + 0.1, -kBoxLimit, kBoxLimit), 0.0};
  simplex[3] = {c0, phi0, 0.1};
  std::array<double, 4> value;
  for (int i = 0; i < 4; ++i) value[i] = f(simplex[i]);

  auto order = [&]() {
    std::array<int, 4> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    std::array<std::array<double, 3>, 4> s2;
    std::array<double, 4> v2;
    for (int i = 0; i < 4; ++i) {
      s2[i] = simplex[idx[i]];
      v2[i] = value[idx[i]];
    }
    simplex = s2;
    value = v2;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    order();
    if (value[3] - value[0] <=
        options.tolerance * (1.0 + std::abs(value[0]))) {
      break;
    }
    std::array<double, 3> centroid = {0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[i][d] / 3.0;
    }
    auto blend = [&](double coef) {
      std::array<double, 3> p;
      for (int d = 0; d < 3; ++d) {
        p[d] = centroid[d] + coef * (simplex[3][d] - centroid[d]);
      }
      return p;
    };
    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < value[0]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[3] = expanded;
        value[3] = fe;
      } else {
        simplex[3] = reflected;
        value[3] = fr;
      }
    } else if (fr < value[2]) {
      simplex[3] = reflected;
      value[3] = fr;
    } else {
      const auto contracted = blend(fr < value[3] ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, value[3])) {
        simplex[3] = contracted;
        value[3] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          for (int d = 0; d < 3; ++d) {
            simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] -
                                                   simplex[0][d]);
          }
          value[i] = f(simplex[i]);
        }
      }
    }
  }
  order();

  ArmaModel model;
  model.c = simplex[0][0];
  model.phi = std::clamp(simplex[0][1], -kBoxLimit, kBoxLimit);
  model.theta = std::clamp(simplex[0][2], -kBoxLimit, kBoxLimit);
  model.sigma2 = value[0] / static_cast<double>(n - 1);
  return model;
}

std::vector<double> arma_forecast(const ArmaModel& model,
                                  std::span<const double> history,
                                  int horizon) {
  if (history.empty()) {
    throw InvalidParameterError("arma_forecast: history must be non-empty");
  }
  if (horizon < 0) {
    throw InvalidParameterError("arma_forecast: horizon must be >= 0");
  }
  double e_prev = 0.0;
  for (std::size_t t = 1; t < history.size(); ++t) {
    e_prev = history[t] - model.c - model.phi * history[t - 1] -
             model.theta * e_prev;
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(horizon));
  double x_prev = history.back();
  // Future innovations take their mean, zero; the MA term only feeds the
  // first step.
  for (int h = 1; h <= horizon; ++h) {
    const double x_next = model.c + model.phi * x_prev +
                          (h == 1 ? model.theta * e_prev : 0.0);
    out.push_back(x_next);
    x_prev = x_next;
  }
  return out;
}

}  // namespace optstream
