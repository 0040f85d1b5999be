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

#include "optstream/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "optstream/baselines.hpp"
#include "optstream/error.hpp"

namespace optstream {
namespace {

void check_pair(std::span<const double> a, std::span<const double> b,
                const char* who) {
  if (a.size() != b.size()) {
    throw InvalidParameterError(std::string(who) +
                                ": series lengths must match");
  }
  if (a.empty()) {
    throw InvalidParameterError(std::string(who) +
                                ": series must be non-empty");
  }
}

// Rescales the stage split to a new total budget, keeping the proportions
// and forcing the exact sum.
PrivacyParams with_epsilon(const PrivacyParams& base, double epsilon) {
  PrivacyParams p = base;
  const double f = epsilon / base.epsilon;
  p.epsilon = epsilon;
  p.split.eps_sample = base.split.eps_sample * f;
  p.split.eps_perturb = base.split.eps_perturb * f;
  p.split.eps_post = epsilon - p.split.eps_sample - p.split.eps_perturb;
  return p;
}

PrivacyParams with_sampler(const PrivacyParams& base, SamplerKind kind) {
  if (base.sampler == kind) return base;
  PrivacyParams p = base;
  p.sampler = kind;
  p.split = split_budget(p.epsilon, kind);
  return p;
}

TimeSeries baseline_stream(const std::string& which, const TimeSeries& series,
                           const PrivacyParams& params,
                           const NoiseSource& source) {
  PeriodPartition parts = make_periods(series, params.w);
  TimeSeries out;
  out.start_index = series.start_index;
  out.values.reserve(series.values.size());
  const std::string stage = which + "-baseline";
  for (const WPeriod& period : parts.periods) {
    NoiseStream s = source.stream(period.index, stage);
    std::vector<double> released =
        which == "laplace"
            ? laplace_baseline(period.values, params.epsilon, params.alpha, s)
            : dft_baseline(period.values, params.k, params.epsilon,
                           params.alpha, s);
    out.values.insert(out.values.end(), released.begin(), released.end());
  }
  const std::size_t r = parts.remainder.values.size();
  if (r > 0) {
    NoiseStream s = source.stream(parts.periods.size(), "remainder");
    std::vector<double> noisy = laplace_mechanism(
        parts.remainder.values, static_cast<double>(r) * params.alpha,
        params.epsilon, s);
    for (double v : noisy) out.values.push_back(std::max(v, 0.0));
  }
  return out;
}

}  // namespace

double avg_l1_error(std::span<const double> a, std::span<const double> b) {
  check_pair(a, b, "avg_l1_error");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

double mean_squared_error(std::span<const double> a,
                          std::span<const double> b) {
  check_pair(a, b, "mean_squared_error");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return sum / static_cast<double>(a.size());
}

bool is_known_mechanism(const std::string& name) {
  for (const char* m : kMechanismNames) {
    if (name == m) return true;
  }
  return false;
}

TimeSeries release_with_mechanism(const std::string& mechanism,
                                  const TimeSeries& series,
                                  const PrivacyParams& params,
                                  const FeatureSet& features,
                                  const NoiseSource& source) {
  if (mechanism == "optstream-ls") {
    const PrivacyParams p = with_sampler(params, SamplerKind::kAdaptiveL1);
    return release_stream(series, p, features, source).private_series;
  }
  if (mechanism == "optstream-es") {
    const PrivacyParams p = with_sampler(params, SamplerKind::kEquallySpaced);
    return release_stream(series, p, features, source).private_series;
  }
  if (mechanism == "laplace" || mechanism == "dft") {
    return baseline_stream(mechanism, series, params, source);
  }
  std::string known;
  for (const char* m : kMechanismNames) {
    if (!known.empty()) known += ", ";
    known += m;
  }
  throw InvalidParameterError("unknown mechanism '" + mechanism +
                              "'; expected one of: " + known);
}

std::vector<CompareRow> run_compare(const TimeSeries& series,
                                    const PrivacyParams& base_params,
                                    const FeatureSet& features,
                                    const std::vector<std::string>& mechanisms,
                                    const std::vector<double>& epsilons,
                                    std::span<const std::uint64_t> seeds) {
  for (const std::string& m : mechanisms) {
    if (!is_known_mechanism(m)) {
      // Reuse the error text with the accepted list.
      release_with_mechanism(m, series, base_params, features,
                             NoiseSource::disabled());
    }
  }
  std::vector<CompareRow> rows;
  rows.reserve(mechanisms.size() * epsilons.size() * seeds.size());
  for (double eps : epsilons) {
    const PrivacyParams params = with_epsilon(base_params, eps);
    for (const std::string& mechanism : mechanisms) {
      for (std::uint64_t seed : seeds) {
        const NoiseSource source = NoiseSource::seeded(seed);
        TimeSeries released =
            release_with_mechanism(mechanism, series, params, features,
                                   source);
        CompareRow row;
        row.mechanism = mechanism;
        row.epsilon = eps;
        row.seed = seed;
        row.avg_l1 = avg_l1_error(released.values, series.values);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<CompareSummary> summarize_compare(
    const std::vector<CompareRow>& rows) {
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  for (const CompareRow& row : rows) {
    groups[{row.mechanism, row.epsilon}].push_back(row.avg_l1);
  }
  std::vector<CompareSummary> out;
  out.reserve(groups.size());
  for (const auto& [key, values] : groups) {
    CompareSummary s;
    s.mechanism = key.first;
    s.epsilon = key.second;
    s.seeds = static_cast<int>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    s.mean_avg_l1 = mean;
    s.stderr_avg_l1 =
        values.size() > 1
            ? std::sqrt(var / (static_cast<double>(values.size()) - 1.0) /
                        static_cast<double>(values.size()))
            : 0.0;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<AblationRow> run_ablation(const TimeSeries& series,
                                      const PrivacyParams& params,
                                      const FeatureSet& features,
                                      std::span<const std::uint64_t> seeds) {
  const std::vector<std::pair<std::string, StageToggles>> variants = {
      {"p", {false, false}},
      {"p+o", {false, true}},
      {"p+s", {true, false}},
      {"p+s+o", {true, true}},
  };
  std::vector<AblationRow> rows;
  rows.reserve(variants.size() * seeds.size());
  for (const auto& [name, toggles] : variants) {
    ReleaseOptions options;
    options.stages = toggles;
    for (std::uint64_t seed : seeds) {
      const NoiseSource source = NoiseSource::seeded(seed);
      StreamRelease release = release_stream(
          series, params, features, source,
          RemainderPolicy::kLaplaceRelease, options);
      AblationRow row;
      row.variant = name;
      row.seed = seed;
      row.avg_l1 =
          avg_l1_error(release.private_series.values, series.values);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

BoundExperimentResult error_bound_experiment(int w, double epsilon,
                                             double lipschitz, int seeds,
                                             std::uint64_t master_seed) {
  if (w < 2) {
    throw InvalidParameterError("error_bound_experiment: w must be >= 2");
  }
  if (!(epsilon > 0.0)) {
    throw InvalidParameterError("error_bound_experiment: epsilon must be > 0");
  }
  if (lipschitz < 0.0) {
    throw InvalidParameterError(
        "error_bound_experiment: lipschitz must be >= 0");
  }
  if (seeds < 1) {
    throw InvalidParameterError("error_bound_experiment: seeds must be >= 1");
  }

  BoundExperimentResult result;
  result.w = w;
  result.epsilon = epsilon;
  result.lipschitz = lipschitz;
  result.seeds = seeds;
  // Optimal segment length from the error bound; a flat stream needs no
  // interior samples at all.
  int m = lipschitz > 0.0
              ? static_cast<int>(std::llround(
                    std::sqrt(static_cast<double>(w) /
                              (epsilon * lipschitz))))
              : w;
  m = std::clamp(m, 1, w);
  const int k = std::clamp(static_cast<int>(std::llround(
                               static_cast<double>(w) / m)),
                           2, w);
  result.m = m;
  result.k = k;

  const SampleSet samples = equally_spaced_sample(w, k);
  const double offset = 10.0 * std::max(lipschitz, 1.0) * w;

  double mse_sampled = 0.0;
  double mse_laplace = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const NoiseSource source =
        NoiseSource::seeded(master_seed + static_cast<std::uint64_t>(s));
    NoiseStream walk = source.stream(0, "walk");
    std::vector<double> x(static_cast<std::size_t>(w));
    x[0] = offset;
    for (int t = 1; t < w; ++t) {
      x[t] = x[t - 1] + lipschitz * (2.0 * walk.uniform01() - 1.0);
    }

    std::vector<double> sampled;
    sampled.reserve(samples.indices.size());
    for (int t : samples.indices) sampled.push_back(x[t - 1]);
    NoiseStream ps = source.stream(0, "perturb");
    // The full budget goes to perturbation: sampling is data independent
    // and post-processing is disabled in this experiment.
    std::vector<double> noisy = perturb(sampled, epsilon, 1.0, ps);
    std::vector<double> reconstructed = reconstruct(samples, noisy, w);
    mse_sampled += mean_squared_error(reconstructed, x);

    NoiseStream ls = source.stream(0, "laplace-baseline");
    std::vector<double> lap = laplace_baseline(x, epsilon, 1.0, ls);
    mse_laplace += mean_squared_error(lap, x);
  }
  result.mse_sampled = mse_sampled / seeds;
  result.mse_laplace = mse_laplace / seeds;
  result.ratio = result.mse_sampled > 0.0
                     ? result.mse_laplace / result.mse_sampled
                     : std::numeric_limits<double>::infinity();
  return result;
}

}  // namespace optstream
