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

#include "optstream/sampling.hpp"

#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {

double l1_score(std::span<const double> x, int a, int b) {
  const int w = static_cast<int>(x.size());
  if (a < 1 || b > w || a >= b) {
    throw InvalidRangeError("l1_score: need 1 <= a < b <= " +
                            std::to_string(w) + ", got a=" +
                            std::to_string(a) + " b=" + std::to_string(b));
  }
  const double xa = x[a - 1];
  const double xb = x[b - 1];
  const double slope = (xb - xa) / static_cast<double>(b - a);
  double score = 0.0;
  for (int i = a + 1; i < b; ++i) {
    score += std::abs(xa + slope * static_cast<double>(i - a) - x[i - 1]);
  }
  return score;
}

double l1_sensitivity(int a, int b, double alpha) {
  if (a >= b) {
    throw InvalidRangeError("l1_sensitivity: need a < b");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("l1_sensitivity: alpha must be > 0");
  }
  return 2.0 * alpha * static_cast<double>(b - a);
}

double l1_sampler_sensitivity(int w, int k, double alpha) {
  if (k < 2 || k > w) {
    throw InvalidParameterError(
        "l1_sampler_sensitivity: need 2 <= k <= w");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("l1_sampler_sensitivity: alpha must be > 0");
  }
  return 2.0 * alpha * static_cast<double>(w - k);
}

SampleSet equally_spaced_sample(int w, int k) {
  if (k < 2 || k > w) {
    throw InvalidParameterError("equally_spaced_sample: need 2 <= k <= w");
  }
  SampleSet s;
  s.indices.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const double pos = 1.0 + static_cast<double>(i - 1) *
                                 static_cast<double>(w - 1) /
                                 static_cast<double>(k - 1);
    const int idx = static_cast<int>(std::llround(pos));
    if (s.indices.empty() || s.indices.back() != idx) {
      s.indices.push_back(idx);
    }
  }
  return s;
}

SampleSet adaptive_l1_sample(std::span<const double> x, int k, double eps_s,
                             double theta, double alpha,
                             NoiseStream& stream) {
  const int w = static_cast<int>(x.size());
  if (k < 2 || k > w) {
    throw InvalidParameterError("adaptive_l1_sample: need 2 <= k <= w");
  }
  if (!(eps_s > 0.0) || !std::isfinite(eps_s)) {
    throw InvalidParameterError("adaptive_l1_sample: eps_s must be > 0");
  }
  if (theta < 0.0 || !std::isfinite(theta)) {
    throw InvalidParameterError("adaptive_l1_sample: theta must be >= 0");
  }

  const double delta = l1_sampler_sensitivity(w, k, alpha);
  const double rho = stream.laplace(2.0 * delta / eps_s);
  const double nu_scale = 4.0 * k * delta / eps_s;

  std::vector<char> in_set(static_cast<std::size_t>(w) + 1, 0);
  in_set[1] = 1;
  int size = 1;
  int tp = 1;
  auto add = [&](int j) {
    if (!in_set[j]) {
      in_set[j] = 1;
      ++size;
    }
  };

  for (int i = 2; i <= w; ++i) {
    const double mu = stream.laplace(nu_scale);
    if (l1_score(x, tp, i) + mu >= theta + rho) {
      add(i);
      tp = i;
    }
    if (w - i <= k - size) {
      for (int j = i + 1; j <= w; ++j) add(j);
    }
    if (size == k) break;
  }

  SampleSet s;
  s.indices.reserve(static_cast<std::size_t>(size));
  for (int j = 1; j <= w; ++j) {
    if (in_set[j]) s.indices.push_back(j);
  }
  return s;
}

}  // namespace optstream
