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

#include "optstream/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "optstream/error.hpp"
#include "optstream/eval.hpp"

namespace optstream {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(trim(part));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

struct Context {
  std::string path;
  std::size_t line = 0;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(path + " line " + std::to_string(line) + ", key '" +
                      key + "': " + what);
  }
};

double parse_double(const Context& ctx, const std::string& raw) {
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != raw.size() || !std::isfinite(v)) throw std::exception();
    return v;
  } catch (const std::exception&) {
    ctx.fail("'" + raw + "' is not a finite number");
  }
}

int parse_int(const Context& ctx, const std::string& raw) {
  try {
    std::size_t used = 0;
    const long v = std::stol(raw, &used);
    if (used != raw.size()) throw std::exception();
    return static_cast<int>(v);
  } catch (const std::exception&) {
    ctx.fail("'" + raw + "' is not an integer");
  }
}

std::pair<int, int> parse_range(const Context& ctx, const std::string& raw) {
  const auto dash = raw.find('-');
  if (dash == std::string::npos) {
    const int v = parse_int(ctx, raw);
    return {v, v};
  }
  const int a = parse_int(ctx, trim(raw.substr(0, dash)));
  const int b = parse_int(ctx, trim(raw.substr(dash + 1)));
  return {a, b};
}

}  // namespace

RunConfig default_config() {
  RunConfig config;
  config.params.w = 48;
  config.params.epsilon = 1.0;
  config.params.alpha = 10.0;
  config.params.theta = 1000.0;
  config.params.k = 10;
  config.params.sampler = SamplerKind::kAdaptiveL1;
  config.params.split =
      split_budget(config.params.epsilon, config.params.sampler);
  config.feature_ranges = {
      {{1, 14}, {15, 24}, {25, 36}, {37, 48}},
      {{1, 48}},
  };
  config.remainder = RemainderPolicy::kLaplaceRelease;
  config.mechanisms = {"optstream-ls", "optstream-es", "laplace", "dft"};
  config.epsilons = {1.0, 0.1, 0.01};
  config.seeds = 30;
  config.lipschitz = 10.0;
  config.bound_seeds = 100;
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open for reading");
  }
  RunConfig config = default_config();
  std::optional<std::array<double, 3>> split_weights;
  bool epsilon_seen = false;

  std::string line;
  Context ctx{path, 0, ""};
  while (std::getline(in, line)) {
    ++ctx.line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      ctx.key = "";
      ctx.fail("expected 'key = value'");
    }
    ctx.key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) ctx.fail("empty value");

    if (ctx.key == "w") {
      config.params.w = parse_int(ctx, value);
    } else if (ctx.key == "epsilon") {
      config.params.epsilon = parse_double(ctx, value);
      epsilon_seen = true;
    } else if (ctx.key == "alpha") {
      config.params.alpha = parse_double(ctx, value);
    } else if (ctx.key == "theta") {
      config.params.theta = parse_double(ctx, value);
    } else if (ctx.key == "k") {
      config.params.k = parse_int(ctx, value);
    } else if (ctx.key == "sampler") {
      if (value == "adaptive-l1") {
        config.params.sampler = SamplerKind::kAdaptiveL1;
      } else if (value == "equally-spaced") {
        config.params.sampler = SamplerKind::kEquallySpaced;
      } else {
        ctx.fail("expected 'adaptive-l1' or 'equally-spaced', got '" + value +
                 "'");
      }
    } else if (ctx.key == "split") {
      const auto parts = split(value, ',');
      if (parts.size() != 3) {
        ctx.fail("expected three comma separated weights");
      }
      split_weights = std::array<double, 3>{parse_double(ctx, parts[0]),
                                            parse_double(ctx, parts[1]),
                                            parse_double(ctx, parts[2])};
    } else if (ctx.key == "features") {
      config.feature_ranges.clear();
      for (const std::string& feature : split(value, '|')) {
        std::vector<std::pair<int, int>> ranges;
        for (const std::string& range : split(feature, ',')) {
          if (range.empty()) ctx.fail("empty range");
          ranges.push_back(parse_range(ctx, range));
        }
        if (ranges.empty()) ctx.fail("feature with no ranges");
        config.feature_ranges.push_back(std::move(ranges));
      }
    } else if (ctx.key == "remainder") {
      if (value == "laplace") {
        config.remainder = RemainderPolicy::kLaplaceRelease;
      } else if (value == "reject") {
        config.remainder = RemainderPolicy::kReject;
      } else {
        ctx.fail("expected 'laplace' or 'reject', got '" + value + "'");
      }
    } else if (ctx.key == "mechanisms") {
      config.mechanisms.clear();
      for (const std::string& name : split(value, ',')) {
        if (!is_known_mechanism(name)) {
          ctx.fail("unknown mechanism '" + name +
                   "'; expected optstream-ls, optstream-es, laplace, dft");
        }
        config.mechanisms.push_back(name);
      }
    } else if (ctx.key == "epsilons") {
      config.epsilons.clear();
      for (const std::string& eps : split(value, ',')) {
        const double v = parse_double(ctx, eps);
        if (!(v > 0.0)) ctx.fail("epsilons must be > 0");
        config.epsilons.push_back(v);
      }
    } else if (ctx.key == "seeds") {
      config.seeds = parse_int(ctx, value);
      if (config.seeds < 1) ctx.fail("seeds must be >= 1");
    } else if (ctx.key == "lipschitz") {
      config.lipschitz = parse_double(ctx, value);
      if (config.lipschitz < 0.0) ctx.fail("lipschitz must be >= 0");
    } else if (ctx.key == "bound_seeds") {
      config.bound_seeds = parse_int(ctx, value);
      if (config.bound_seeds < 1) ctx.fail("bound_seeds must be >= 1");
    } else {
      ctx.fail("unknown key");
    }
  }

  if (!epsilon_seen && !config.epsilons.empty()) {
    // Keep the single-release budget in sync with a declared sweep.
    config.params.epsilon = config.epsilons.front();
  }
  try {
    config.params.split = split_budget(config.params.epsilon,
                                       config.params.sampler, split_weights);
    config.params.validate();
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config;
}

FeatureSet config_features(const RunConfig& config) {
  std::vector<Feature> extras;
  extras.reserve(config.feature_ranges.size());
  for (const auto& ranges : config.feature_ranges) {
    extras.push_back(feature_from_ranges(ranges));
  }
  return make_feature_set(config.params.w, std::move(extras));
}

}  // namespace optstream
