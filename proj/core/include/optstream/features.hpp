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

#ifndef OPTSTREAM_FEATURES_HPP_
#define OPTSTREAM_FEATURES_HPP_

#include <span>
#include <utility>
#include <vector>

namespace optstream {

// A partition of the period domain {1, ..., w} into disjoint blocks of
// 1-based time indices. Block order is release order.
struct Feature {
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

// The finest feature: one singleton block per time step.
Feature singleton_feature(int w);

// Builds a feature from closed index ranges [first, second]. The ranges
// must tile {1, ..., w} once the feature is validated inside a FeatureSet.
Feature feature_from_ranges(
    const std::vector<std::pair<int, int>>& ranges);

// An ordered list of features F_1 .. F_p over a common domain, F_1 being
// the singleton feature. Validation checks that every feature partitions
// {1, ..., w} and that the features form a refinement chain: for every pair
// the finer one must split the coarser exactly. A block that straddles two
// blocks of another feature (a partial overlap) is rejected, because the
// consistency constraints between such features would be silently dropped.
// The refinement relation is derived from the blocks, never declared.
struct FeatureSet {
  int w = 0;
  std::vector<Feature> features;  // features[0] is always F_1

  int count() const { return static_cast<int>(features.size()); }
};

// Assembles and validates {F_1} + extras (coarser features, finest first by
// convention but any chain order is accepted).
FeatureSet make_feature_set(int w, std::vector<Feature> extras);

// Per-block sums of x under the feature. x is one w-period.
std::vector<double> feature_query(std::span<const double> x,
                                  const Feature& feature);

}  // namespace optstream

#endif  // OPTSTREAM_FEATURES_HPP_
