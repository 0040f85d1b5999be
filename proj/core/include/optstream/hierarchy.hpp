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

#ifndef OPTSTREAM_HIERARCHY_HPP_
#define OPTSTREAM_HIERARCHY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "optstream/budget.hpp"
#include "optstream/features.hpp"
#include "optstream/noise.hpp"
#include "optstream/pipeline.hpp"
#include "optstream/qp.hpp"
#include "optstream/types.hpp"

namespace optstream {

// Declarative description of an aggregation hierarchy. Leaves carry their
// series; internal nodes list their children by name. Exactly one node may
// be parentless (the root), each node has at most one parent, and every
// node must be reachable from the root: duplicated names, sharing a child
// (a non-laminar overlap), cycles, and disconnected forests are all
// rejected.
struct HierarchySpec {
  struct Node {
    std::string name;
    std::vector<std::string> children;
    std::optional<TimeSeries> series;  // required iff children is empty
  };
  std::vector<Node> nodes;
};

struct TreeNode {
  std::string name;
  int parent = -1;
  std::vector<int> children;
  int depth = 0;
  std::vector<int> leaves;  // leaf ids under this node; itself when a leaf
  TimeSeries series;

  bool is_leaf() const { return children.empty(); }
};

struct AggregationTree {
  std::vector<TreeNode> nodes;
  int root = 0;
  int height = 1;  // number of levels; a lone node has height 1
  std::vector<std::vector<int>> levels;  // node ids grouped by depth
  std::vector<int> leaf_ids;

  const TreeNode& node(int id) const { return nodes[id]; }
  int node_count() const { return static_cast<int>(nodes.size()); }
};

// Validates the spec, sums internal series bottom-up, and derives depths
// and levels. A series supplied for an internal node is checked against
// the sum of its children within 1e-9 relative tolerance. All leaf series
// must share length and start index.
AggregationTree build_tree(const HierarchySpec& spec);

struct HierarchicalReleaseOptions {
  std::optional<std::vector<double>> lambda;  // per-feature QP weights
  QpOptions qp;
};

struct HierarchicalRelease {
  // Parallel to tree.nodes.
  std::vector<TimeSeries> private_series;
  // budgets[node][period]: what the node's pipeline spent in that period.
  std::vector<std::vector<BudgetLedger>> budgets;
  std::vector<QpSolution> period_qps;
  double epsilon_per_level = 0.0;
};

// Releases every node of the tree under a per-level budget of
// params.epsilon / height: the levels compose sequentially and siblings
// within a level cover disjoint populations, so each node runs its
// pipeline with the full level budget on its own noise substreams. Per
// period, one joint QP over the leaf variables fits every node's noisy
// answers, with internal node values expressed as sums of their leaves;
// released streams therefore satisfy parent = sum(children) exactly. The
// stream length must be a multiple of params.w.
HierarchicalRelease release_hierarchical(
    const AggregationTree& tree, const PrivacyParams& params,
    const FeatureSet& features, const NoiseSource& source,
    const HierarchicalReleaseOptions& options = {});

// Largest |parent_t - sum(children_t)| over all internal nodes and steps.
double max_consistency_violation(const AggregationTree& tree,
                                 const std::vector<TimeSeries>& released);

}  // namespace optstream

#endif  // OPTSTREAM_HIERARCHY_HPP_
