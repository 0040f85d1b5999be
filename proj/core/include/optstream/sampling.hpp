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

#ifndef OPTSTREAM_SAMPLING_HPP_
#define OPTSTREAM_SAMPLING_HPP_

#include <span>
#include <vector>

#include "optstream/noise.hpp"

namespace optstream {

// Indices sampled from one w-period, 1-based, strictly increasing, always
// starting with 1. The adaptive sampler may return fewer than k indices.
struct SampleSet {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
};

// Deviation of x[a..b] (1-based, inclusive) from the straight line through
// its endpoints: sum_i |line(i) - x_i|. The endpoints contribute zero.
// Throws InvalidRangeError unless 1 <= a < b <= x.size().
double l1_score(std::span<const double> x, int a, int b);

// Sensitivity of l1_score over alpha-indistinguishable inputs: every
// interior point moves the interpolant by at most alpha and its own term by
// alpha, giving 2 * alpha * (b - a) as a uniform bound.
double l1_sensitivity(int a, int b, double alpha);

// Uniform bound over every range the adaptive sampler can score within a
// w-period when at most k points are kept: 2 * alpha * (w - k).
double l1_sampler_sensitivity(int w, int k, double alpha);

// k indices spread evenly over [1, w]: round(1 + (i-1)(w-1)/(k-1)) for
// i = 1..k, deduplicated. Always contains 1 and w. Data independent, so it
// consumes no privacy budget. Requires 2 <= k <= w.
SampleSet equally_spaced_sample(int w, int k);

// Data-adaptive sampler. Walks i = 2..w keeping the last sampled index t_p,
// and asks a sparse-vector query whether the deviation score l1_score(x,
// t_p, i) exceeds theta; an above answer samples i. When only k - |S| slots
// remain for w - i unvisited indices, the tail is filled deterministically.
// Consumes eps_s (> 0 required). Returns at most k indices including 1; the
// last index w is not guaranteed to be sampled.
SampleSet adaptive_l1_sample(std::span<const double> x, int k, double eps_s,
                             double theta, double alpha, NoiseStream& stream);

}  // namespace optstream

#endif  // OPTSTREAM_SAMPLING_HPP_
