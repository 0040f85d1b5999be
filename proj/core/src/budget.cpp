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

#include "optstream/budget.hpp"

#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {

PeriodPartition make_periods(const TimeSeries& series, int w) {
  if (w < 1) {
    throw InvalidParameterError("make_periods: w must be >= 1, got " +
                                std::to_string(w));
  }
  PeriodPartition out;
  const std::int64_t n = series.length();
  const std::int64_t full = n / w;
  out.periods.reserve(static_cast<std::size_t>(full));
  for (std::int64_t p = 0; p < full; ++p) {
    WPeriod period;
    period.origin = series.start_index + p * w;
    period.index = static_cast<std::uint64_t>(p);
    period.values.assign(series.values.begin() + p * w,
                         series.values.begin() + (p + 1) * w);
    out.periods.push_back(std::move(period));
  }
  out.remainder.start_index = series.start_index + full * w;
  out.remainder.values.assign(series.values.begin() + full * w,
                              series.values.end());
  return out;
}

BudgetSplit split_budget(double epsilon, SamplerKind sampler,
                         std::optional<std::array<double, 3>> weights) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("split_budget: epsilon must be positive");
  }
  std::array<double, 3> ws;
  if (weights) {
    ws = *weights;
  } else if (sampler == SamplerKind::kAdaptiveL1) {
    ws = {1.0, 1.0, 1.0};
  } else {
    ws = {0.0, 1.0, 1.0};
  }
  double sum = 0.0;
  for (double v : ws) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw InvalidParameterError("split_budget: weights must be >= 0");
    }
    sum += v;
  }
  if (!(sum > 0.0)) {
    throw InvalidParameterError("split_budget: weights sum to zero");
  }
  if (sampler == SamplerKind::kEquallySpaced && ws[0] != 0.0) {
    throw InvalidParameterError(
        "split_budget: the equally spaced sampler consumes no budget; "
        "the sampling weight must be 0");
  }
  BudgetSplit split;
  split.eps_sample = epsilon * (ws[0] / sum);
  split.eps_perturb = epsilon * (ws[1] / sum);
  // Forced remainder so the three parts sum to epsilon exactly.
  split.eps_post = epsilon - split.eps_sample - split.eps_perturb;
  return split;
}

void PrivacyParams::validate() const {
  if (w < 2) {
    throw InvalidParameterError("PrivacyParams: w must be >= 2, got " +
                                std::to_string(w));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("PrivacyParams: epsilon must be positive");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("PrivacyParams: alpha must be positive");
  }
  if (theta < 0.0 || !std::isfinite(theta)) {
    throw InvalidParameterError("PrivacyParams: theta must be >= 0");
  }
  if (k < 2 || k > w) {
    throw InvalidParameterError("PrivacyParams: k must satisfy 2 <= k <= w");
  }
  if (split.eps_sample < 0.0 || split.eps_perturb < 0.0 ||
      split.eps_post < 0.0) {
    throw InvalidParameterError("PrivacyParams: split parts must be >= 0");
  }
  if (std::abs(split.total() - epsilon) > 1e-12) {
    throw InvalidParameterError(
        "PrivacyParams: split must sum to epsilon (|sum - epsilon| <= 1e-12)");
  }
  if (!(split.eps_perturb > 0.0)) {
    throw InvalidParameterError("PrivacyParams: eps_perturb must be > 0");
  }
  if (sampler == SamplerKind::kEquallySpaced && split.eps_sample != 0.0) {
    throw InvalidParameterError(
        "PrivacyParams: equally spaced sampling must have eps_sample == 0");
  }
  if (sampler == SamplerKind::kAdaptiveL1 && !(split.eps_sample > 0.0)) {
    throw InvalidParameterError(
        "PrivacyParams: the adaptive sampler needs eps_sample > 0");
  }
}

PrivacyParams make_params(int w, double epsilon, double alpha, double theta,
                          int k, SamplerKind sampler) {
  PrivacyParams params;
  params.w = w;
  params.epsilon = epsilon;
  params.alpha = alpha;
  params.theta = theta;
  params.k = k;
  params.sampler = sampler;
  params.split = split_budget(epsilon, sampler);
  params.validate();
  return params;
}

}  // namespace optstream
