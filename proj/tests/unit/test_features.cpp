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

#include <vector>

#include "doctest.h"
#include "optstream/error.hpp"
#include "optstream/features.hpp"

namespace optstream {
namespace {

TEST_SUITE("features") {

TEST_CASE("singleton feature has one block per step") {
  Feature f = singleton_feature(4);
  REQUIRE(f.block_count() == 4);
  for (int j = 0; j < 4; ++j) {
    REQUIRE(f.blocks[j].size() == 1);
    CHECK(f.blocks[j][0] == j + 1);
  }
}

TEST_CASE("feature_query sums each block") {
  std::vector<double> x{10, 15, 20, 23, 41, 72, 55, 50, 88, 72, 40, 18};
  Feature f = feature_from_ranges({{1, 4}, {5, 9}, {10, 12}});
  CHECK(feature_query(x, f) == std::vector<double>{68.0, 306.0, 130.0});

  Feature whole = feature_from_ranges({{1, 12}});
  CHECK(feature_query(x, whole) == std::vector<double>{504.0});

  Feature singles = singleton_feature(12);
  CHECK(feature_query(x, singles) == x);
}

TEST_CASE("feature_query rejects indices outside the input") {
  std::vector<double> x{1.0, 2.0};
  Feature f = feature_from_ranges({{1, 3}});
  CHECK_THROWS_AS(feature_query(x, f), InvalidParameterError);
}

TEST_CASE("feature_from_ranges rejects backwards ranges") {
  CHECK_THROWS_AS(feature_from_ranges({{3, 2}}), ConfigError);
}

TEST_CASE("feature set always carries the singletons first") {
  FeatureSet fs = make_feature_set(6, {});
  REQUIRE(fs.count() == 1);
  CHECK(fs.features[0].block_count() == 6);
  CHECK(fs.w == 6);
}

TEST_CASE("the evaluation profile features form a valid chain") {
  FeatureSet fs = make_feature_set(
      48, {feature_from_ranges({{1, 14}, {15, 24}, {25, 36}, {37, 48}}),
           feature_from_ranges({{1, 48}})});
  CHECK(fs.count() == 3);
  CHECK(fs.features[1].block_count() == 4);
  CHECK(fs.features[2].block_count() == 1);
}

TEST_CASE("feature sets reject non-partitions") {
  // Gap: index 5 missing.
  CHECK_THROWS_AS(
      make_feature_set(6, {feature_from_ranges({{1, 4}, {6, 6}})}),
      ConfigError);
  // Overlap: index 3 covered twice.
  CHECK_THROWS_AS(
      make_feature_set(6, {feature_from_ranges({{1, 3}, {3, 6}})}),
      ConfigError);
  // Out of range.
  CHECK_THROWS_AS(make_feature_set(6, {feature_from_ranges({{1, 8}})}),
                  ConfigError);
}

TEST_CASE("feature sets reject blocks that straddle another feature") {
  // {5..12} is neither inside a block of the other feature nor a union of
  // its blocks, so the pair is not a refinement chain.
  CHECK_THROWS_AS(
      make_feature_set(
          12, {feature_from_ranges({{1, 6}, {7, 12}}),
               feature_from_ranges({{1, 4}, {5, 12}})}),
      ConfigError);
}

TEST_CASE("chain order does not matter") {
  FeatureSet coarse_first = make_feature_set(
      8, {feature_from_ranges({{1, 8}}),
          feature_from_ranges({{1, 4}, {5, 8}})});
  CHECK(coarse_first.count() == 3);
}

}  // TEST_SUITE

}  // namespace
}  // namespace optstream
