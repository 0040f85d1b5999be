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

#include "optstream/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "optstream/error.hpp"
#include "optstream/postprocess.hpp"

namespace optstream {

AggregationTree build_tree(const HierarchySpec& spec) {
  if (spec.nodes.empty()) {
    throw ConfigError("hierarchy: the spec declares no nodes");
  }
  std::map<std::string, int> id_of;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& [it, inserted] =
        id_of.insert({spec.nodes[i].name, static_cast<int>(i)});
    if (!inserted) {
      throw ConfigError("hierarchy: node name '" + spec.nodes[i].name +
                        "' is declared twice");
    }
  }

  AggregationTree tree;
  tree.nodes.resize(spec.nodes.size());
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    tree.nodes[i].name = spec.nodes[i].name;
  }
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    for (const std::string& child : spec.nodes[i].children) {
      auto it = id_of.find(child);
      if (it == id_of.end()) {
        throw ConfigError("hierarchy: node '" + spec.nodes[i].name +
                          "' lists unknown child '" + child + "'");
      }
      const int c = it->second;
      if (tree.nodes[c].parent != -1) {
        throw ConfigError(
            "hierarchy: node '" + child +
            "' has two parents; aggregations must be laminar");
      }
      if (c == static_cast<int>(i)) {
        throw ConfigError("hierarchy: node '" + child + "' is its own child");
      }
      tree.nodes[c].parent = static_cast<int>(i);
      tree.nodes[i].children.push_back(c);
    }
  }

  int root = -1;
  for (int i = 0; i < tree.node_count(); ++i) {
    if (tree.nodes[i].parent == -1) {
      if (root != -1) {
        throw ConfigError("hierarchy: nodes '" + tree.nodes[root].name +
                          "' and '" + tree.nodes[i].name +
                          "' are both parentless; the spec must be a single "
                          "tree, not a forest");
      }
      root = i;
    }
  }
  if (root == -1) {
    throw ConfigError("hierarchy: no parentless node; the spec contains a "
                      "cycle");
  }
  tree.root = root;

  // Depths by traversal; unreachable nodes mean a cycle hangs off the tree.
  std::vector<char> seen(spec.nodes.size(), 0);
  std::queue<int> frontier;
  frontier.push(root);
  seen[root] = 1;
  int visited = 0;
  while (!frontier.empty()) {
    const int id = frontier.front();
    frontier.pop();
    ++visited;
    for (int c : tree.nodes[id].children) {
      tree.nodes[c].depth = tree.nodes[id].depth + 1;
      seen[c] = 1;
      frontier.push(c);
    }
  }
  if (visited != tree.node_count()) {
    for (int i = 0; i < tree.node_count(); ++i) {
      if (!seen[i]) {
        throw ConfigError("hierarchy: node '" + tree.nodes[i].name +
                          "' is not reachable from the root (cycle or "
                          "disconnected component)");
      }
    }
  }

  int max_depth = 0;
  for (int i = 0; i < tree.node_count(); ++i) {
    max_depth = std::max(max_depth, tree.nodes[i].depth);
    if (tree.nodes[i].is_leaf()) tree.leaf_ids.push_back(i);
  }
  tree.height = max_depth + 1;
  tree.levels.assign(static_cast<std::size_t>(tree.height), {});
  for (int i = 0; i < tree.node_count(); ++i) {
    tree.levels[tree.nodes[i].depth].push_back(i);
  }

  // Series: leaves from the spec, internal nodes summed bottom-up.
  std::int64_t length = -1;
  std::int64_t start = 0;
  for (int id : tree.leaf_ids) {
    const auto& series = spec.nodes[id].series;
    if (!series) {
      throw ConfigError("hierarchy: leaf '" + tree.nodes[id].name +
                        "' has no series");
    }
    if (length == -1) {
      length = series->length();
      start = series->start_index;
    } else if (series->length() != length ||
               series->start_index != start) {
      throw ConfigError("hierarchy: leaf '" + tree.nodes[id].name +
                        "' series length or start index differs from the "
                        "other leaves");
    }
    tree.nodes[id].series = *series;
    tree.nodes[id].leaves = {id};
  }

  // Children before parents: sort ids by decreasing depth.
  std::vector<int> order(spec.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return tree.nodes[a].depth > tree.nodes[b].depth;
  });
  for (int id : order) {
    TreeNode& node = tree.nodes[id];
    if (node.is_leaf()) continue;
    node.series.start_index = start;
    node.series.values.assign(static_cast<std::size_t>(length), 0.0);
    for (int c : node.children) {
      for (std::int64_t t = 0; t < length; ++t) {
        node.series.values[t] += tree.nodes[c].series.values[t];
      }
      node.leaves.insert(node.leaves.end(), tree.nodes[c].leaves.begin(),
                         tree.nodes[c].leaves.end());
    }
    std::sort(node.leaves.begin(), node.leaves.end());
    if (spec.nodes[id].series) {
      const TimeSeries& declared = *spec.nodes[id].series;
      if (declared.length() != length || declared.start_index != start) {
        throw ConfigError("hierarchy: node '" + node.name +
                          "' declared series has mismatched length or start");
      }
      for (std::int64_t t = 0; t < length; ++t) {
        const double computed = node.series.values[t];
        const double tol = 1e-9 * std::max(1.0, std::abs(computed));
        if (std::abs(declared.values[t] - computed) > tol) {
          throw ConfigError(
              "hierarchy: node '" + node.name + "' series disagrees with "
              "the sum of its children at step " + std::to_string(t));
        }
      }
    }
  }
  return tree;
}

HierarchicalRelease release_hierarchical(
    const AggregationTree& tree, const PrivacyParams& params,
    const FeatureSet& features, const NoiseSource& source,
    const HierarchicalReleaseOptions& options) {
  params.validate();
  const int w = params.w;
  if (features.w != w) {
    throw InvalidParameterError(
        "release_hierarchical: feature domain does not match params.w");
  }
  const std::int64_t length = tree.node(tree.root).series.length();
  if (length == 0 || length % w != 0) {
    throw InvalidParameterError(
        "release_hierarchical: stream length " + std::to_string(length) +
        " must be a non-zero multiple of w = " + std::to_string(w));
  }

  // Per-level budget; every node runs its full pipeline inside its level's
  // share, with the stage split scaled proportionally.
  const double eps_level = params.epsilon / tree.height;
  PrivacyParams node_params = params;
  const double f = eps_level / params.epsilon;
  node_params.epsilon = eps_level;
  node_params.split.eps_sample = params.split.eps_sample * f;
  node_params.split.eps_perturb = params.split.eps_perturb * f;
  node_params.split.eps_post = eps_level - node_params.split.eps_sample -
                               node_params.split.eps_perturb;
  node_params.validate();

  const int n_nodes = tree.node_count();
  const int n_leaves = static_cast<int>(tree.leaf_ids.size());
  const int periods = static_cast<int>(length / w);
  const int p = features.count();

  std::vector<double> lambda =
      options.lambda ? *options.lambda : default_lambda(features);
  if (static_cast<int>(lambda.size()) != p) {
    throw InvalidParameterError(
        "release_hierarchical: lambda must have one weight per feature");
  }

  std::vector<int> leaf_slot(static_cast<std::size_t>(n_nodes), -1);
  for (int s = 0; s < n_leaves; ++s) leaf_slot[tree.leaf_ids[s]] = s;

  HierarchicalRelease out;
  out.epsilon_per_level = eps_level;
  out.private_series.resize(static_cast<std::size_t>(n_nodes));
  out.budgets.assign(static_cast<std::size_t>(n_nodes), {});
  for (int id = 0; id < n_nodes; ++id) {
    out.private_series[id].start_index = tree.node(id).series.start_index;
    out.private_series[id].values.reserve(static_cast<std::size_t>(length));
  }

  for (int period = 0; period < periods; ++period) {
    std::vector<QpRow> rows;
    std::vector<double> warm(static_cast<std::size_t>(n_leaves) * w, 0.0);

    for (int id = 0; id < n_nodes; ++id) {
      const TreeNode& node = tree.node(id);
      const std::span<const double> x(
          node.series.values.data() + static_cast<std::size_t>(period) * w,
          static_cast<std::size_t>(w));
      const std::string tag = "node:" + node.name + ":";
      BudgetLedger ledger;

      SampleSet samples;
      if (params.sampler == SamplerKind::kAdaptiveL1) {
        NoiseStream s = source.stream(period, tag + "sample");
        samples = adaptive_l1_sample(x, node_params.k,
                                     node_params.split.eps_sample,
                                     node_params.theta, node_params.alpha, s);
        ledger.sample = node_params.split.eps_sample;
      } else {
        samples = equally_spaced_sample(w, node_params.k);
      }

      std::vector<double> sampled;
      sampled.reserve(samples.indices.size());
      for (int t : samples.indices) sampled.push_back(x[t - 1]);
      NoiseStream ps = source.stream(period, tag + "perturb");
      std::vector<double> noisy = perturb(
          sampled, node_params.split.eps_perturb, node_params.alpha, ps);
      ledger.perturb = node_params.split.eps_perturb;
      std::vector<double> x_tilde = reconstruct(samples, noisy, w);

      std::vector<std::vector<double>> answers;
      answers.reserve(static_cast<std::size_t>(p));
      answers.push_back(x_tilde);
      if (p >= 2) {
        NoiseStream qs = source.stream(period, tag + "post");
        const double eps_each =
            node_params.split.eps_post / static_cast<double>(p - 1);
        for (int i = 1; i < p; ++i) {
          answers.push_back(
              laplace_mechanism(feature_query(x, features.features[i]),
                                node_params.alpha, eps_each, qs));
        }
        ledger.post = node_params.split.eps_post;
      }
      out.budgets[id].push_back(ledger);

      // Rows over the leaf variables of this node, one per feature block.
      for (int i = 0; i < p; ++i) {
        const Feature& feature = features.features[i];
        for (int j = 0; j < feature.block_count(); ++j) {
          QpRow row;
          row.weight = lambda[i];
          row.target = answers[i][j];
          row.vars.reserve(node.leaves.size() * feature.blocks[j].size());
          for (int leaf : node.leaves) {
            const int slot = leaf_slot[leaf];
            for (int t : feature.blocks[j]) {
              row.vars.push_back(slot * w + (t - 1));
            }
          }
          rows.push_back(std::move(row));
        }
      }

      if (node.is_leaf()) {
        const int slot = leaf_slot[id];
        for (int t = 0; t < w; ++t) {
          warm[static_cast<std::size_t>(slot) * w + t] =
              std::max(x_tilde[t], 0.0);
        }
      }
    }

    QpOptions qp_options = options.qp;
    qp_options.warm_start = warm;
    QpSolution solution =
        solve_consistency_qp(n_leaves * w, rows, qp_options);

    for (int id = 0; id < n_nodes; ++id) {
      const TreeNode& node = tree.node(id);
      for (int t = 0; t < w; ++t) {
        double v = 0.0;
        for (int leaf : node.leaves) {
          v += solution.x[static_cast<std::size_t>(leaf_slot[leaf]) * w + t];
        }
        out.private_series[id].values.push_back(v);
      }
    }
    out.period_qps.push_back(std::move(solution));
  }
  return out;
}

double max_consistency_violation(const AggregationTree& tree,
                                 const std::vector<TimeSeries>& released) {
  if (released.size() != static_cast<std::size_t>(tree.node_count())) {
    throw InvalidParameterError(
        "max_consistency_violation: one series per tree node required");
  }
  double worst = 0.0;
  for (int id = 0; id < tree.node_count(); ++id) {
    const TreeNode& node = tree.node(id);
    if (node.is_leaf()) continue;
    const auto& parent = released[id].values;
    for (std::size_t t = 0; t < parent.size(); ++t) {
      double sum = 0.0;
      for (int c : node.children) sum += released[c].values[t];
      worst = std::max(worst, std::abs(parent[t] - sum));
    }
  }
  return worst;
}

}  // namespace optstream
