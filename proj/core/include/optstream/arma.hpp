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

#ifndef OPTSTREAM_ARMA_HPP_
#define OPTSTREAM_ARMA_HPP_

#include <span>
#include <vector>

namespace optstream {

// ARMA(1,1): x_t = c + phi * x_{t-1} + theta * e_{t-1} + e_t, |phi| < 1.
struct ArmaModel {
  double c = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double sigma2 = 0.0;  // innovation variance from the fit residuals
};

struct ArmaFitOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;
};

// Fits by conditional sum of squares: innovations are initialized to zero,
// the residual recursion e_t = x_t - c - phi * x_{t-1} - theta * e_{t-1}
// runs from t = 2, and sum e_t^2 is minimized with a Nelder-Mead simplex
// over (c, phi, theta). The stationarity constraint |phi| < 1 is enforced
// with a penalty. Deterministic: no randomness enters the fit. A constant
// series short-circuits to (c = value, phi = 0, theta = 0, sigma2 = 0).
// Requires at least 3 observations.
ArmaModel arma_fit(std::span<const double> x,
                   const ArmaFitOptions& options = {});

// Iterated forecast: the innovation recursion runs over `history` with the
// fitted parameters, then future innovations are set to their zero mean and
// x is rolled forward `horizon` steps. Pure function of its inputs.
std::vector<double> arma_forecast(const ArmaModel& model,
                                  std::span<const double> history,
                                  int horizon);

}  // namespace optstream

#endif  // OPTSTREAM_ARMA_HPP_
