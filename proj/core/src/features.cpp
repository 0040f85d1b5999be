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

#include "optstream/features.hpp"

#include <algorithm>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

// Maps each time index to its block id, validating the partition property.
std::vector<int> block_of(const Feature& f, int w, int feature_pos) {
  std::vector<int> owner(static_cast<std::size_t>(w) + 1, -1);
  for (int j = 0; j < f.block_count(); ++j) {
    if (f.blocks[j].empty()) {
      throw ConfigError("feature " + std::to_string(feature_pos) +
                        ": block " + std::to_string(j + 1) + " is empty");
    }
    for (int t : f.blocks[j]) {
      if (t < 1 || t > w) {
        throw ConfigError("feature " + std::to_string(feature_pos) +
                          ": index " + std::to_string(t) +
                          " outside [1, " + std::to_string(w) + "]");
      }
      if (owner[t] != -1) {
        throw ConfigError("feature " + std::to_string(feature_pos) +
                          ": index " + std::to_string(t) +
                          " appears in two blocks");
      }
      owner[t] = j;
    }
  }
  for (int t = 1; t <= w; ++t) {
    if (owner[t] == -1) {
      throw ConfigError("feature " + std::to_string(feature_pos) +
                        ": index " + std::to_string(t) +
                        " is not covered by any block");
    }
  }
  return owner;
}

// True iff every block of `fine` lies inside a single block of `coarse`.
bool refines(const std::vector<int>& fine_owner,
             const std::vector<int>& coarse_owner, int w) {
  std::vector<int> image(fine_owner.size(), -2);
  for (int t = 1; t <= w; ++t) {
    const int fb = fine_owner[t];
    if (image[fb] == -2) {
      image[fb] = coarse_owner[t];
    } else if (image[fb] != coarse_owner[t]) {
      return false;
    }
  }
  return true;
}

}  // namespace

Feature singleton_feature(int w) {
  if (w < 1) throw InvalidParameterError("singleton_feature: w must be >= 1");
  Feature f;
  f.blocks.reserve(static_cast<std::size_t>(w));
  for (int t = 1; t <= w; ++t) f.blocks.push_back({t});
  return f;
}

Feature feature_from_ranges(
    const std::vector<std::pair<int, int>>& ranges) {
  Feature f;
  f.blocks.reserve(ranges.size());
  for (const auto& [a, b] : ranges) {
    if (a > b) {
      throw ConfigError("feature range " + std::to_string(a) + "-" +
                        std::to_string(b) + " is empty");
    }
    std::vector<int> block;
    block.reserve(static_cast<std::size_t>(b - a + 1));
    for (int t = a; t <= b; ++t) block.push_back(t);
    f.blocks.push_back(std::move(block));
  }
  return f;
}

FeatureSet make_feature_set(int w, std::vector<Feature> extras) {
  if (w < 1) throw InvalidParameterError("make_feature_set: w must be >= 1");
  FeatureSet set;
  set.w = w;
  set.features.push_back(singleton_feature(w));
  for (auto& f : extras) set.features.push_back(std::move(f));

  std::vector<std::vector<int>> owners;
  owners.reserve(set.features.size());
  for (int i = 0; i < set.count(); ++i) {
    owners.push_back(block_of(set.features[i], w, i + 1));
  }
  for (int i = 0; i < set.count(); ++i) {
    for (int j = i + 1; j < set.count(); ++j) {
      if (!refines(owners[i], owners[j], w) &&
          !refines(owners[j], owners[i], w)) {
        throw ConfigError(
            "features " + std::to_string(i + 1) + " and " +
            std::to_string(j + 1) +
            " partially overlap: neither refines the other, so their "
            "consistency constraints would be undefined");
      }
    }
  }
  return set;
}

std::vector<double> feature_query(std::span<const double> x,
                                  const Feature& feature) {
  const int w = static_cast<int>(x.size());
  std::vector<double> out;
  out.reserve(feature.blocks.size());
  for (const auto& block : feature.blocks) {
    double sum = 0.0;
    for (int t : block) {
      if (t < 1 || t > w) {
        throw InvalidParameterError("feature_query: index " +
                                    std::to_string(t) + " outside [1, " +
                                    std::to_string(w) + "]");
      }
      sum += x[t - 1];
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace optstream
