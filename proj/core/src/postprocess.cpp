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

#include "optstream/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {

std::vector<double> default_lambda(const FeatureSet& features) {
  std::vector<double> lambda;
  lambda.reserve(features.features.size());
  for (const Feature& f : features.features) {
    lambda.push_back(1.0 / static_cast<double>(f.block_count()));
  }
  return lambda;
}

std::vector<std::vector<double>> expand_features(std::span<const double> x,
                                                 const FeatureSet& features) {
  std::vector<std::vector<double>> out;
  out.reserve(features.features.size());
  for (const Feature& f : features.features) {
    out.push_back(feature_query(x, f));
  }
  return out;
}

double feature_space_distance(
    const std::vector<std::vector<double>>& a,
    const std::vector<std::vector<double>>& b,
    std::span<const double> lambda) {
  if (a.size() != b.size() || a.size() != lambda.size()) {
    throw InvalidParameterError(
        "feature_space_distance: feature counts must match");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) {
      throw InvalidParameterError(
          "feature_space_distance: block counts must match");
    }
    double part = 0.0;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      const double d = a[i][j] - b[i][j];
      part += d * d;
    }
    sum += lambda[i] * part;
  }
  return std::sqrt(sum);
}

PostProcessResult post_process(std::span<const double> x_tilde,
                               std::span<const double> x_true,
                               const FeatureSet& features, double eps_post,
                               double alpha, NoiseStream& stream,
                               const PostProcessOptions& options) {
  const int w = features.w;
  if (static_cast<int>(x_tilde.size()) != w ||
      static_cast<int>(x_true.size()) != w) {
    throw InvalidParameterError(
        "post_process: series length must equal the feature domain w=" +
        std::to_string(w));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("post_process: alpha must be > 0");
  }
  const int p = features.count();

  std::vector<double> lambda =
      options.lambda ? *options.lambda : default_lambda(features);
  if (static_cast<int>(lambda.size()) != p) {
    throw InvalidParameterError(
        "post_process: lambda must have one weight per feature");
  }
  for (double l : lambda) {
    if (!(l > 0.0) || l > 1.0) {
      throw InvalidParameterError(
          "post_process: lambda weights must lie in (0, 1]");
    }
  }

  PostProcessResult result;
  result.noisy_features.emplace_back(x_tilde.begin(), x_tilde.end());

  if (p == 1) {
    result.values.assign(x_tilde.begin(), x_tilde.end());
    for (double& v : result.values) v = std::max(v, 0.0);
    result.eps_spent = 0.0;
    result.qp.x = result.values;
    result.qp.converged = true;
    return result;
  }

  if (!(eps_post > 0.0) || !std::isfinite(eps_post)) {
    throw InvalidParameterError(
        "post_process: eps_post must be > 0 when coarse features exist");
  }
  const double eps_each = eps_post / static_cast<double>(p - 1);
  for (int i = 1; i < p; ++i) {
    std::vector<double> answer =
        laplace_mechanism(feature_query(x_true, features.features[i]),
                          alpha, eps_each, stream);
    result.noisy_features.push_back(std::move(answer));
  }
  result.eps_spent = eps_post;

  // One weighted least-squares row per (feature, block), expressed in the
  // F_1 variables. The refinement chain makes every coarse block value the
  // sum of its time steps, so all consistency constraints are implicit.
  std::vector<QpRow> rows;
  for (int i = 0; i < p; ++i) {
    const Feature& f = features.features[i];
    for (int j = 0; j < f.block_count(); ++j) {
      QpRow row;
      row.weight = lambda[i];
      row.target = result.noisy_features[i][j];
      row.vars.reserve(f.blocks[j].size());
      for (int t : f.blocks[j]) row.vars.push_back(t - 1);
      rows.push_back(std::move(row));
    }
  }

  QpOptions qp_options = options.qp;
  std::vector<double> warm(x_tilde.begin(), x_tilde.end());
  if (qp_options.warm_start.empty()) qp_options.warm_start = warm;
  result.qp = solve_consistency_qp(w, rows, qp_options);
  result.values = result.qp.x;
  return result;
}

}  // namespace optstream
