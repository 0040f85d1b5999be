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

#include "optstream/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

double elapsed_us(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::vector<double> perturb(std::span<const double> x_sampled, double eps_p,
                            double alpha, NoiseStream& stream) {
  if (!(eps_p > 0.0) || !std::isfinite(eps_p)) {
    throw InvalidParameterError("perturb: eps_p must be > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("perturb: alpha must be > 0");
  }
  const double sensitivity =
      static_cast<double>(x_sampled.size()) * alpha;
  return laplace_mechanism(x_sampled, sensitivity, eps_p, stream);
}

std::vector<double> reconstruct(const SampleSet& samples,
                                std::span<const double> values, int w) {
  const auto& idx = samples.indices;
  if (idx.empty() || idx.front() != 1) {
    throw InvalidParameterError("reconstruct: samples must start at index 1");
  }
  if (idx.size() != values.size()) {
    throw InvalidParameterError(
        "reconstruct: samples and values must have equal length");
  }
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 1 || idx[i] > w ||
        (i > 0 && idx[i] <= idx[i - 1])) {
      throw InvalidParameterError(
          "reconstruct: indices must be strictly increasing within [1, w]");
    }
  }

  std::vector<double> out(static_cast<std::size_t>(w), 0.0);
  for (std::size_t s = 0; s + 1 < idx.size(); ++s) {
    const int a = idx[s];
    const int b = idx[s + 1];
    const double va = values[s];
    const double vb = values[s + 1];
    const double slope = (vb - va) / static_cast<double>(b - a);
    for (int t = a; t < b; ++t) {
      out[t - 1] = va + slope * static_cast<double>(t - a);
    }
  }
  // Hold the last sampled value: the adaptive sampler does not guarantee
  // that w itself was sampled.
  for (int t = idx.back(); t <= w; ++t) {
    out[t - 1] = values[idx.size() - 1];
  }
  return out;
}

ReleaseReport release_period(const WPeriod& period,
                             const PrivacyParams& params,
                             const FeatureSet& features,
                             const NoiseSource& source,
                             const ReleaseOptions& options) {
  params.validate();
  const int w = params.w;
  if (period.w() != w) {
    throw InvalidParameterError(
        "release_period: period length " + std::to_string(period.w()) +
        " does not match params.w = " + std::to_string(w));
  }
  if (features.w != w) {
    throw InvalidParameterError(
        "release_period: feature domain does not match params.w");
  }

  ReleaseReport report;
  report.period_index = period.index;
  const std::span<const double> x(period.values);

  auto t0 = std::chrono::steady_clock::now();
  if (options.stages.sampling) {
    if (params.sampler == SamplerKind::kAdaptiveL1) {
      NoiseStream s = source.stream(period.index, "sample");
      report.samples = adaptive_l1_sample(x, params.k, params.split.eps_sample,
                                          params.theta, params.alpha, s);
      report.budget.sample = params.split.eps_sample;
    } else {
      report.samples = equally_spaced_sample(w, params.k);
    }
  } else {
    report.samples.indices.resize(static_cast<std::size_t>(w));
    for (int t = 1; t <= w; ++t) report.samples.indices[t - 1] = t;
  }
  report.diagnostics.sample_us = elapsed_us(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<double> sampled;
  sampled.reserve(report.samples.indices.size());
  for (int t : report.samples.indices) sampled.push_back(x[t - 1]);
  NoiseStream perturb_stream = source.stream(period.index, "perturb");
  std::vector<double> noisy =
      perturb(sampled, params.split.eps_perturb, params.alpha,
              perturb_stream);
  report.budget.perturb = params.split.eps_perturb;
  std::vector<double> x_tilde = reconstruct(report.samples, noisy, w);
  report.diagnostics.perturb_us = elapsed_us(t0);

  t0 = std::chrono::steady_clock::now();
  if (options.stages.post && features.count() >= 2) {
    NoiseStream post_stream = source.stream(period.index, "post");
    PostProcessResult post =
        post_process(x_tilde, x, features, params.split.eps_post,
                     params.alpha, post_stream, options.post);
    report.budget.post = post.eps_spent;
    report.private_values = std::move(post.values);
    report.diagnostics.qp_iterations = post.qp.iterations;
    report.diagnostics.qp_kkt_residual = post.qp.kkt_residual;
  } else {
    report.private_values = std::move(x_tilde);
    for (double& v : report.private_values) v = std::max(v, 0.0);
  }
  report.diagnostics.post_us = elapsed_us(t0);
  return report;
}

StreamRelease release_stream(const TimeSeries& series,
                             const PrivacyParams& params,
                             const FeatureSet& features,
                             const NoiseSource& source,
                             RemainderPolicy policy,
                             const ReleaseOptions& options) {
  params.validate();
  PeriodPartition parts = make_periods(series, params.w);
  if (!parts.remainder.values.empty() &&
      policy == RemainderPolicy::kReject) {
    throw InvalidParameterError(
        "release_stream: stream length " +
        std::to_string(series.values.size()) +
        " is not a multiple of w = " + std::to_string(params.w) +
        " and the remainder policy is kReject");
  }

  StreamRelease out;
  out.private_series.start_index = series.start_index;
  out.private_series.values.reserve(series.values.size());
  out.reports.reserve(parts.periods.size());
  for (const WPeriod& period : parts.periods) {
    ReleaseReport report =
        release_period(period, params, features, source, options);
    out.private_series.values.insert(out.private_series.values.end(),
                                     report.private_values.begin(),
                                     report.private_values.end());
    out.reports.push_back(std::move(report));
  }

  const std::size_t r = parts.remainder.values.size();
  if (r > 0) {
    NoiseStream s = source.stream(parts.periods.size(), "remainder");
    std::vector<double> noisy = laplace_mechanism(
        parts.remainder.values, static_cast<double>(r) * params.alpha,
        params.epsilon, s);
    for (double v : noisy) {
      out.private_series.values.push_back(std::max(v, 0.0));
    }
    out.remainder_length = static_cast<int>(r);
  }
  return out;
}

}  // namespace optstream
