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

#ifndef OPTSTREAM_POSTPROCESS_HPP_
#define OPTSTREAM_POSTPROCESS_HPP_

#include <optional>
#include <span>
#include <vector>

#include "optstream/features.hpp"
#include "optstream/noise.hpp"
#include "optstream/qp.hpp"

namespace optstream {

struct PostProcessOptions {
  // Per-feature objective weights, one per feature including F_1. Defaults
  // to 1/m_i where m_i is the block count of feature i.
  std::optional<std::vector<double>> lambda;
  QpOptions qp;
};

struct PostProcessResult {
  // The post-processed period, one value per time step, all >= 0.
  std::vector<double> values;
  // Noisy feature answers actually used: entry 0 is x_tilde itself, entries
  // 1..p-1 are the privately queried coarse features.
  std::vector<std::vector<double>> noisy_features;
  double eps_spent = 0.0;
  QpSolution qp;
};

// Enforces consistency across feature granularities. The reconstructed
// period x_tilde serves as the noisy answer to F_1; each coarser feature
// F_2..F_p is answered with the Laplace mechanism at sensitivity alpha and
// budget eps_post / (p - 1) from `x_true`, which is touched only through
// feature_query. The QP
//
//   minimize sum_i lambda_i * sum_j (xhat_ij - c_ij)^2
//   s.t. coarse block values equal the sums of their refinements, xhat >= 0
//
// is solved exactly in the F_1 variables: a refinement chain makes every
// coarse variable the sum of its block's F_1 entries, so the equality
// constraints hold by construction. With a single feature no budget is
// consumed and the result is the non-negative projection of x_tilde.
PostProcessResult post_process(std::span<const double> x_tilde,
                               std::span<const double> x_true,
                               const FeatureSet& features, double eps_post,
                               double alpha, NoiseStream& stream,
                               const PostProcessOptions& options = {});

// All feature coordinates of a period: feature_query per feature.
std::vector<std::vector<double>> expand_features(std::span<const double> x,
                                                 const FeatureSet& features);

// Weighted feature-space distance used by the optimality analysis:
// sqrt(sum_i lambda_i * sum_j (a_ij - b_ij)^2) over all feature
// coordinates. Both arguments are expanded coordinate vectors.
double feature_space_distance(
    const std::vector<std::vector<double>>& a,
    const std::vector<std::vector<double>>& b,
    std::span<const double> lambda);

// Default objective weights: 1/m_i per feature.
std::vector<double> default_lambda(const FeatureSet& features);

}  // namespace optstream

#endif  // OPTSTREAM_POSTPROCESS_HPP_
