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

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "optstream/arma.hpp"
#include "optstream/budget.hpp"
#include "optstream/config.hpp"
#include "optstream/csv.hpp"
#include "optstream/error.hpp"
#include "optstream/eval.hpp"
#include "optstream/hierarchy.hpp"
#include "optstream/pipeline.hpp"
#include "optstream/synth.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace optstream;

struct Overrides {
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<int> w;
  std::optional<int> k;
  std::optional<double> theta;
};

// Shared flags. --epsilon rescales the configured split proportionally so a
// sweep override keeps the sampler's relative budget shares.
void add_common_flags(CLI::App* cmd, std::string* config_path,
                      std::uint64_t* seed, Overrides* ov) {
  cmd->add_option("--config", *config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", *seed, "master random seed (default 1)");
  cmd->add_option("--epsilon", ov->epsilon, "override: total budget per period");
  cmd->add_option("--alpha", ov->alpha, "override: indistinguishability radius");
  cmd->add_option("--w", ov->w, "override: period length");
  cmd->add_option("--k", ov->k, "override: samples per period");
  cmd->add_option("--theta", ov->theta, "override: adaptive sampling threshold");
}

RunConfig resolve_config(const std::string& config_path, const Overrides& ov) {
  RunConfig config =
      config_path.empty() ? default_config() : parse_config_file(config_path);
  if (ov.w) config.params.w = *ov.w;
  if (ov.alpha) config.params.alpha = *ov.alpha;
  if (ov.k) config.params.k = *ov.k;
  if (ov.theta) config.params.theta = *ov.theta;
  if (ov.epsilon) {
    const double scale = *ov.epsilon / config.params.epsilon;
    config.params.epsilon = *ov.epsilon;
    config.params.split.eps_sample *= scale;
    config.params.split.eps_perturb *= scale;
    config.params.split.eps_post = config.params.epsilon -
                                   config.params.split.eps_sample -
                                   config.params.split.eps_perturb;
  }
  config.params.validate();
  return config;
}

json params_json(const PrivacyParams& p) {
  return json{{"w", p.w},
              {"epsilon", p.epsilon},
              {"alpha", p.alpha},
              {"theta", p.theta},
              {"k", p.k},
              {"sampler", p.sampler == SamplerKind::kAdaptiveL1
                              ? "adaptive-l1"
                              : "equally-spaced"},
              {"split",
               {{"sample", p.split.eps_sample},
                {"perturb", p.split.eps_perturb},
                {"post", p.split.eps_post}}}};
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError(path + ": cannot open for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw IngestionError(path + ": write failed");
}

int cmd_release(const std::string& input, const std::string& config_path,
                std::uint64_t seed, const Overrides& ov,
                const std::string& output) {
  const RunConfig config = resolve_config(config_path, ov);
  const FeatureSet features = config_features(config);
  const TimeSeries series = read_series_csv(input);
  const StreamRelease release =
      release_stream(series, config.params, features,
                     NoiseSource::seeded(seed), config.remainder);
  write_series_csv(output, release.private_series);

  BudgetLedger total;
  json periods = json::array();
  for (const ReleaseReport& r : release.reports) {
    total.sample += r.budget.sample;
    total.perturb += r.budget.perturb;
    total.post += r.budget.post;
    periods.push_back(json{{"index", r.period_index},
                           {"samples", r.samples.indices},
                           {"budget",
                            {{"sample", r.budget.sample},
                             {"perturb", r.budget.perturb},
                             {"post", r.budget.post}}},
                           {"qp_iterations", r.diagnostics.qp_iterations},
                           {"qp_kkt_residual", r.diagnostics.qp_kkt_residual}});
  }
  json metrics{{"command", "release"},
               {"input", input},
               {"seed", seed},
               {"params", params_json(config.params)},
               {"periods_released", release.reports.size()},
               {"remainder_length", release.remainder_length},
               {"budget_total",
                {{"sample", total.sample},
                 {"perturb", total.perturb},
                 {"post", total.post}}},
               {"avg_l1_error", avg_l1_error(release.private_series.values,
                                             series.values)},
               {"periods", std::move(periods)}};
  write_json(output + ".metrics.json", metrics);
  return 0;
}

int cmd_compare(const std::string& input, const std::string& config_path,
                std::uint64_t seed, const Overrides& ov,
                const std::vector<std::string>& mechanisms,
                const std::string& output) {
  RunConfig config = resolve_config(config_path, ov);
  if (!mechanisms.empty()) {
    for (const std::string& m : mechanisms) {
      if (!is_known_mechanism(m)) {
        throw InvalidParameterError(
            "unknown mechanism '" + m +
            "'; expected optstream-ls, optstream-es, laplace, dft");
      }
    }
    config.mechanisms = mechanisms;
  }
  const FeatureSet features = config_features(config);
  const TimeSeries series = read_series_csv(input);
  std::vector<std::uint64_t> seeds(config.seeds);
  std::iota(seeds.begin(), seeds.end(), seed);
  const auto rows = run_compare(series, config.params, features,
                                config.mechanisms, config.epsilons, seeds);
  const auto summaries = summarize_compare(rows);

  std::ofstream out(output, std::ios::binary);
  if (!out) throw IngestionError(output + ": cannot open for writing");
  out << "mechanism,epsilon,seeds,mean_avg_l1,stderr_avg_l1\n";
  char line[256];
  for (const CompareSummary& s : summaries) {
    std::snprintf(line, sizeof(line), "%s,%.6f,%d,%.6f,%.6f\n",
                  s.mechanism.c_str(), s.epsilon, s.seeds, s.mean_avg_l1,
                  s.stderr_avg_l1);
    out << line;
  }
  if (!out) throw IngestionError(output + ": write failed");
  return 0;
}

HierarchySpec load_hierarchy_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path + ": cannot open for reading");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ConfigError(path + ": expected an object with a 'nodes' array");
  }
  const auto base = std::filesystem::path(path).parent_path();
  HierarchySpec spec;
  for (const json& n : doc["nodes"]) {
    if (!n.is_object() || !n.contains("name") || !n["name"].is_string()) {
      throw ConfigError(path + ": every node needs a string 'name'");
    }
    HierarchySpec::Node node;
    node.name = n["name"].get<std::string>();
    if (node.name.empty() ||
        node.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                    "0123456789_.-") != std::string::npos) {
      throw ConfigError(path + ": node name '" + node.name +
                        "' must be non-empty and use only [A-Za-z0-9_.-]");
    }
    if (n.contains("children")) {
      if (!n["children"].is_array()) {
        throw ConfigError(path + ": node '" + node.name +
                          "': 'children' must be an array of names");
      }
      for (const json& c : n["children"]) {
        if (!c.is_string()) {
          throw ConfigError(path + ": node '" + node.name +
                            "': 'children' must be an array of names");
        }
        node.children.push_back(c.get<std::string>());
      }
    }
    if (n.contains("file")) {
      if (!n["file"].is_string()) {
        throw ConfigError(path + ": node '" + node.name +
                          "': 'file' must be a path");
      }
      const auto file = base / n["file"].get<std::string>();
      try {
        node.series = read_series_csv(file.string());
      } catch (const Error& e) {
        throw IngestionError("node '" + node.name + "': " + e.what());
      }
    } else if (node.children.empty()) {
      throw ConfigError(path + ": leaf node '" + node.name +
                        "' needs a 'file' with its series");
    }
    spec.nodes.push_back(std::move(node));
  }
  return spec;
}

int cmd_release_hierarchical(const std::string& spec_path,
                             const std::string& config_path,
                             std::uint64_t seed, const Overrides& ov,
                             const std::string& output_dir) {
  const RunConfig config = resolve_config(config_path, ov);
  const FeatureSet features = config_features(config);
  const AggregationTree tree = build_tree(load_hierarchy_spec(spec_path));
  const HierarchicalRelease release = release_hierarchical(
      tree, config.params, features, NoiseSource::seeded(seed));

  std::filesystem::create_directories(output_dir);
  const auto dir = std::filesystem::path(output_dir);

  // Quantize leaves to the CSV precision and rebuild internal nodes as sums
  // of the quantized leaves, so the written files satisfy
  // parent = sum(children) exactly, not just up to per-file rounding.
  std::vector<TimeSeries> written = release.private_series;
  for (int id : tree.leaf_ids) {
    for (double& v : written[id].values) v = std::round(v * 1e6) / 1e6;
  }
  for (int id = 0; id < tree.node_count(); ++id) {
    if (tree.node(id).is_leaf()) continue;
    std::fill(written[id].values.begin(), written[id].values.end(), 0.0);
    for (int leaf : tree.node(id).leaves) {
      for (std::size_t t = 0; t < written[id].values.size(); ++t) {
        written[id].values[t] += written[leaf].values[t];
      }
    }
  }

  json nodes = json::array();
  for (int id = 0; id < tree.node_count(); ++id) {
    const auto file = dir / (tree.node(id).name + ".csv");
    write_series_csv(file.string(), written[id]);
    double spent = 0.0;
    for (const BudgetLedger& ledger : release.budgets[id]) {
      spent += ledger.total();
    }
    nodes.push_back(json{{"name", tree.node(id).name},
                         {"depth", tree.node(id).depth},
                         {"leaf", tree.node(id).is_leaf()},
                         {"epsilon_spent_total", spent}});
  }
  json metrics{{"command", "release-hierarchical"},
               {"spec", spec_path},
               {"seed", seed},
               {"params", params_json(config.params)},
               {"height", tree.height},
               {"epsilon_per_level", release.epsilon_per_level},
               {"max_consistency_violation",
                max_consistency_violation(tree, release.private_series)},
               {"nodes", std::move(nodes)}};
  write_json((dir / "metrics.json").string(), metrics);
  return 0;
}

int cmd_forecast(const std::string& input, const std::string& config_path,
                 std::uint64_t seed, const Overrides& ov,
                 const std::string& output) {
  const RunConfig config = resolve_config(config_path, ov);
  const FeatureSet features = config_features(config);
  const TimeSeries series = read_series_csv(input);
  const StreamRelease release =
      release_stream(series, config.params, features,
                     NoiseSource::seeded(seed), config.remainder);

  const ArmaModel model = arma_fit(release.private_series.values);
  const int horizon = config.params.w;
  const std::vector<double> forecast =
      arma_forecast(model, release.private_series.values, horizon);

  std::ofstream out(output, std::ios::binary);
  if (!out) throw IngestionError(output + ": cannot open for writing");
  out << "t,history,private_history,forecast\n";
  char line[256];
  const long long start = series.start_index;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    std::snprintf(line, sizeof(line), "%lld,%.6f,%.6f,\n",
                  start + static_cast<long long>(i), series.values[i],
                  release.private_series.values[i]);
    out << line;
  }
  for (int h = 0; h < horizon; ++h) {
    std::snprintf(line, sizeof(line), "%lld,,,%.6f\n",
                  start + static_cast<long long>(series.values.size()) + h,
                  forecast[h]);
    out << line;
  }
  if (!out) throw IngestionError(output + ": write failed");

  json metrics{{"command", "forecast"},
               {"input", input},
               {"seed", seed},
               {"params", params_json(config.params)},
               {"horizon", horizon},
               {"model",
                {{"c", model.c},
                 {"phi", model.phi},
                 {"theta", model.theta},
                 {"sigma2", model.sigma2}}}};
  write_json(output + ".metrics.json", metrics);
  return 0;
}

int cmd_bound_experiment(const std::string& config_path, std::uint64_t seed,
                         const Overrides& ov, std::optional<double> lipschitz,
                         const std::string& output) {
  const RunConfig config = resolve_config(config_path, ov);
  const double L = lipschitz.value_or(config.lipschitz);
  const BoundExperimentResult result =
      error_bound_experiment(config.params.w, config.params.epsilon, L,
                             config.bound_seeds, seed);
  json doc{{"command", "bound-experiment"},
           {"seed", seed},
           {"w", result.w},
           {"epsilon", result.epsilon},
           {"lipschitz", result.lipschitz},
           {"m", result.m},
           {"k", result.k},
           {"seeds", result.seeds},
           {"mse_sampled", result.mse_sampled},
           {"mse_laplace", result.mse_laplace},
           {"ratio_laplace_over_sampled", result.ratio}};
  write_json(output, doc);
  return 0;
}

int cmd_synth(int days, double mean, double noise_sd, std::uint64_t seed,
              const std::string& output) {
  SyntheticLoadSpec spec = scaled_load_profile(mean);
  spec.noise_sd = noise_sd;
  NoiseStream stream = NoiseSource::seeded(seed).stream(0, "synth");
  write_series_csv(output, synth_load(spec, days, stream));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "OptStream: private release of numeric streams under w-event "
      "differential privacy"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 1;
  Overrides ov;
  std::string input, output, spec_path, output_dir;
  std::vector<std::string> mechanisms;
  std::optional<double> lipschitz;
  int days = 28;
  double mean = 7717.58;
  double noise_sd = 0.0;

  CLI::App* release = app.add_subcommand(
      "release", "Privately release a stream with the sampling pipeline");
  release->add_option("--input", input, "input CSV with header t,value")
      ->required()
      ->check(CLI::ExistingFile);
  release->add_option("--output", output, "output CSV path")->required();
  add_common_flags(release, &config_path, &seed, &ov);

  CLI::App* compare = app.add_subcommand(
      "compare", "Score mechanisms against the input over seeds and budgets");
  compare->add_option("--input", input, "input CSV with header t,value")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--output", output, "summary CSV path")->required();
  compare
      ->add_option("--mechanisms", mechanisms,
                   "subset of optstream-ls, optstream-es, laplace, dft")
      ->delimiter(',');
  add_common_flags(compare, &config_path, &seed, &ov);

  CLI::App* hier = app.add_subcommand(
      "release-hierarchical",
      "Release every node of an aggregation hierarchy consistently");
  hier->add_option("--spec", spec_path, "hierarchy spec JSON")
      ->required()
      ->check(CLI::ExistingFile);
  hier->add_option("--output-dir", output_dir, "directory for per-node CSVs")
      ->required();
  add_common_flags(hier, &config_path, &seed, &ov);

  CLI::App* forecast = app.add_subcommand(
      "forecast", "Release privately, fit ARMA(1,1), forecast one period");
  forecast->add_option("--input", input, "input CSV with header t,value")
      ->required()
      ->check(CLI::ExistingFile);
  forecast->add_option("--output", output, "output CSV path")->required();
  add_common_flags(forecast, &config_path, &seed, &ov);

  CLI::App* bound = app.add_subcommand(
      "bound-experiment",
      "Sample-then-perturb MSE against Laplace on Lipschitz random walks");
  bound->add_option("--output", output, "output JSON path")->required();
  bound->add_option("--lipschitz", lipschitz,
                    "override: per-step Lipschitz constant");
  add_common_flags(bound, &config_path, &seed, &ov);

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate the synthetic daily load benchmark series");
  synth->add_option("--days", days, "number of 48-step days (default 28)");
  synth->add_option("--mean", mean, "daily mean (default 7717.58)");
  synth->add_option("--noise-sd", noise_sd, "Gaussian noise sd (default 0)");
  synth->add_option("--seed", seed, "master random seed (default 1)");
  synth->add_option("--output", output, "output CSV path")->required();

  try {
    app.parse(argc, argv);
    if (release->parsed()) {
      return cmd_release(input, config_path, seed, ov, output);
    }
    if (compare->parsed()) {
      return cmd_compare(input, config_path, seed, ov, mechanisms, output);
    }
    if (hier->parsed()) {
      return cmd_release_hierarchical(spec_path, config_path, seed, ov,
                                      output_dir);
    }
    if (forecast->parsed()) {
      return cmd_forecast(input, config_path, seed, ov, output);
    }
    if (bound->parsed()) {
      return cmd_bound_experiment(config_path, seed, ov, lipschitz, output);
    }
    if (synth->parsed()) {
      return cmd_synth(days, mean, noise_sd, seed, output);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const optstream::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
