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

#ifndef OPTSTREAM_EVAL_HPP_
#define OPTSTREAM_EVAL_HPP_

#include <span>
#include <string>
#include <vector>

#include "optstream/features.hpp"
#include "optstream/pipeline.hpp"
#include "optstream/types.hpp"

namespace optstream {

// Mean absolute deviation: (1/n) * sum |a_i - b_i|. Lengths must match and
// be non-zero.
double avg_l1_error(std::span<const double> a, std::span<const double> b);

// Mean squared deviation, same contract.
double mean_squared_error(std::span<const double> a,
                          std::span<const double> b);

// Mechanism names accepted by the evaluation harness and the CLI.
inline constexpr const char* kMechanismNames[] = {
    "optstream-ls", "optstream-es", "laplace", "dft"};

bool is_known_mechanism(const std::string& name);

// Releases `series` with one named mechanism under a total budget of
// params.epsilon per w-period. The OptStream variants run the full
// pipeline (the sampler kind and default split are overridden to match the
// name); `laplace` and `dft` apply the corresponding baseline to each
// period, with the DFT baseline keeping params.k coefficients. Unknown
// names raise InvalidParameterError listing the accepted ones.
TimeSeries release_with_mechanism(const std::string& mechanism,
                                  const TimeSeries& series,
                                  const PrivacyParams& params,
                                  const FeatureSet& features,
                                  const NoiseSource& source);

// One evaluation row of the comparison harness.
struct CompareRow {
  std::string mechanism;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double avg_l1 = 0.0;
};

struct CompareSummary {
  std::string mechanism;
  double epsilon = 0.0;
  double mean_avg_l1 = 0.0;
  double stderr_avg_l1 = 0.0;
  int seeds = 0;
};

// Releases the series once per (mechanism, epsilon, seed) triple and scores
// each release against the ground truth. Seeds are shared across
// mechanisms, so comparisons are paired.
std::vector<CompareRow> run_compare(const TimeSeries& series,
                                    const PrivacyParams& base_params,
                                    const FeatureSet& features,
                                    const std::vector<std::string>& mechanisms,
                                    const std::vector<double>& epsilons,
                                    std::span<const std::uint64_t> seeds);

std::vector<CompareSummary> summarize_compare(
    const std::vector<CompareRow>& rows);

// Pipeline ablations: perturbation alone, perturbation plus one other
// stage, and the full pipeline. Stage budgets stay at the values carved
// out by base_params.split; a disabled stage leaves its share unspent, so
// every variant perturbs at the same scale.
struct AblationRow {
  std::string variant;  // "p", "p+o", "p+s", "p+s+o"
  std::uint64_t seed = 0;
  double avg_l1 = 0.0;
};

std::vector<AblationRow> run_ablation(const TimeSeries& series,
                                      const PrivacyParams& params,
                                      const FeatureSet& features,
                                      std::span<const std::uint64_t> seeds);

// Sample-then-perturb error-bound experiment on L-Lipschitz streams. Each
// seed draws a fresh bounded-increment random walk of one w-period, picks
// the segment length m = round(sqrt(w / (eps * L))) and the matching
// sample count k = clamp(round(w / m), 2, w), releases by equally spaced
// sampling, perturbation with the full budget, and interpolation (no
// post-processing), and compares against the per-element Laplace release.
struct BoundExperimentResult {
  int w = 0;
  double epsilon = 0.0;
  double lipschitz = 0.0;
  int m = 0;
  int k = 0;
  int seeds = 0;
  double mse_sampled = 0.0;  // mean over seeds
  double mse_laplace = 0.0;
  double ratio = 0.0;        // mse_laplace / mse_sampled
};

BoundExperimentResult error_bound_experiment(int w, double epsilon,
                                             double lipschitz, int seeds,
                                             std::uint64_t master_seed);

}  // namespace optstream

#endif  // OPTSTREAM_EVAL_HPP_
