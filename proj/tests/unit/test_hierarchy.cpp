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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "optstream/budget.hpp"
#include "optstream/error.hpp"
#include "optstream/features.hpp"
#include "optstream/hierarchy.hpp"
#include "optstream/noise.hpp"

namespace optstream {
namespace {

using test::make_series;

TimeSeries leaf_series(double base, int length = 24) {
  std::vector<double> values(length);
  for (int i = 0; i < length; ++i) {
    values[i] = base + 5.0 * std::sin(0.3 * i) + 0.5 * i;
  }
  return make_series(std::move(values));
}

HierarchySpec two_level_spec() {
  HierarchySpec spec;
  for (int i = 0; i < 3; ++i) {
    HierarchySpec::Node leaf;
    leaf.name = "leaf" + std::to_string(i);
    leaf.series = leaf_series(100.0 + 20.0 * i);
    spec.nodes.push_back(std::move(leaf));
  }
  HierarchySpec::Node root;
  root.name = "root";
  root.children = {"leaf0", "leaf1", "leaf2"};
  spec.nodes.push_back(std::move(root));
  return spec;
}

HierarchySpec three_level_spec() {
  HierarchySpec spec;
  const char* leaves[] = {"a", "b", "c", "d"};
  for (const char* name : leaves) {
    HierarchySpec::Node leaf;
    leaf.name = name;
    leaf.series = leaf_series(50.0 + name[0]);
    spec.nodes.push_back(std::move(leaf));
  }
  HierarchySpec::Node m1;
  m1.name = "m1";
  m1.children = {"a", "b"};
  HierarchySpec::Node m2;
  m2.name = "m2";
  m2.children = {"c", "d"};
  HierarchySpec::Node root;
  root.name = "root";
  root.children = {"m1", "m2"};
  spec.nodes.push_back(std::move(m1));
  spec.nodes.push_back(std::move(m2));
  spec.nodes.push_back(std::move(root));
  return spec;
}

FeatureSet features12() {
  return make_feature_set(12, {feature_from_ranges({{1, 6}, {7, 12}})});
}

TEST_SUITE("hierarchy") {

TEST_CASE("build_tree derives structure from the flat spec") {
  AggregationTree tree = build_tree(two_level_spec());
  CHECK(tree.node_count() == 4);
  CHECK(tree.height == 2);
  REQUIRE(tree.levels.size() == 2);
  CHECK(tree.levels[0].size() == 1);
  CHECK(tree.levels[1].size() == 3);
  CHECK(tree.leaf_ids.size() == 3);
  CHECK(tree.node(tree.root).name == "root");

  // Internal series is the exact sum of the leaves.
  const TimeSeries& root = tree.node(tree.root).series;
  for (int t = 0; t < 24; ++t) {
    double sum = 0.0;
    for (int id : tree.leaf_ids) sum += tree.node(id).series.values[t];
    REQUIRE(root.values[t] == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("three-level trees report their height") {
  AggregationTree tree = build_tree(three_level_spec());
  CHECK(tree.height == 3);
  CHECK(tree.levels[0].size() == 1);
  CHECK(tree.levels[1].size() == 2);
  CHECK(tree.levels[2].size() == 4);
}

TEST_CASE("build_tree rejects malformed specs") {
  // Unknown child.
  HierarchySpec spec = two_level_spec();
  spec.nodes.back().children.push_back("ghost");
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // Duplicate name.
  spec = two_level_spec();
  spec.nodes[1].name = "leaf0";
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // A child with two parents breaks laminarity.
  spec = two_level_spec();
  HierarchySpec::Node other;
  other.name = "other";
  other.children = {"leaf1"};
  spec.nodes.push_back(other);
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // Node that is its own child.
  spec = two_level_spec();
  spec.nodes.back().children.push_back("root");
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // Leaf with no series.
  spec = two_level_spec();
  spec.nodes[0].series.reset();
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // Leaves of different lengths.
  spec = two_level_spec();
  spec.nodes[0].series = leaf_series(10.0, 12);
  CHECK_THROWS_AS(build_tree(spec), ConfigError);

  // Empty spec.
  CHECK_THROWS_AS(build_tree(HierarchySpec{}), ConfigError);
}

TEST_CASE("declared internal series must match the leaf sum") {
  HierarchySpec spec = two_level_spec();
  TimeSeries sum = make_series(std::vector<double>(24, 0.0));
  for (int i = 0; i < 3; ++i) {
    for (int t = 0; t < 24; ++t) {
      sum.values[t] += spec.nodes[i].series->values[t];
    }
  }
  spec.nodes.back().series = sum;
  CHECK_NOTHROW(build_tree(spec));

  sum.values[5] += 1.0;
  spec.nodes.back().series = sum;
  CHECK_THROWS_AS(build_tree(spec), ConfigError);
}

TEST_CASE("hierarchical release is consistent by construction") {
  AggregationTree tree = build_tree(two_level_spec());
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  NoiseSource source = NoiseSource::seeded(4242);

  HierarchicalRelease rel =
      release_hierarchical(tree, params, features12(), source);
  CHECK(rel.epsilon_per_level == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_consistency_violation(tree, rel.private_series) <= 1e-9);
  REQUIRE(rel.private_series.size() == 4);
  for (const TimeSeries& series : rel.private_series) {
    REQUIRE(series.length() == 24);
    for (double v : series.values) REQUIRE(v >= 0.0);
  }
}

TEST_CASE("per-node budgets stay within the level budget") {
  AggregationTree tree = build_tree(two_level_spec());
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  HierarchicalRelease rel = release_hierarchical(
      tree, params, features12(), NoiseSource::seeded(1));
  REQUIRE(rel.budgets.size() == 4);
  for (const auto& per_node : rel.budgets) {
    REQUIRE(per_node.size() == 2);  // Two periods of twelve steps.
    for (const BudgetLedger& ledger : per_node) {
      CHECK(std::fabs(ledger.total() - rel.epsilon_per_level) <= 1e-12);
    }
  }
}

TEST_CASE("deeper trees split the budget across more levels") {
  AggregationTree tree = build_tree(three_level_spec());
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  HierarchicalRelease rel = release_hierarchical(
      tree, params, features12(), NoiseSource::seeded(2));
  CHECK(rel.epsilon_per_level == doctest::Approx(1.0 / 3).epsilon(1e-12));
  // Consistency holds at both internal levels simultaneously.
  CHECK(max_consistency_violation(tree, rel.private_series) <= 1e-9);
}

TEST_CASE("hierarchical release replays deterministically") {
  AggregationTree tree = build_tree(two_level_spec());
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  HierarchicalRelease a = release_hierarchical(
      tree, params, features12(), NoiseSource::seeded(3));
  HierarchicalRelease b = release_hierarchical(
      tree, params, features12(), NoiseSource::seeded(3));
  for (std::size_t i = 0; i < a.private_series.size(); ++i) {
    REQUIRE(a.private_series[i].values == b.private_series[i].values);
  }
}

TEST_CASE("stream length must be a whole number of periods") {
  HierarchySpec spec = two_level_spec();
  for (auto& node : spec.nodes) {
    if (node.series) node.series = leaf_series(100.0, 20);
  }
  AggregationTree tree = build_tree(spec);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  CHECK_THROWS_AS(release_hierarchical(tree, params, features12(),
                                       NoiseSource::seeded(1)),
                  InvalidParameterError);
}

TEST_CASE("feature domain must match the period length") {
  AggregationTree tree = build_tree(two_level_spec());
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  FeatureSet wrong = make_feature_set(8, {});
  CHECK_THROWS_AS(release_hierarchical(tree, params, wrong,
                                       NoiseSource::seeded(1)),
                  InvalidParameterError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace optstream
