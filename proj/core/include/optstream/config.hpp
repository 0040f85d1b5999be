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

#ifndef OPTSTREAM_CONFIG_HPP_
#define OPTSTREAM_CONFIG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "optstream/budget.hpp"
#include "optstream/features.hpp"
#include "optstream/types.hpp"

namespace optstream {

// Everything a run needs beyond the input data. Parsed from a plain
// key = value file ('#' starts a comment):
//
//   w         = 48
//   epsilon   = 1.0
//   alpha     = 10.0
//   k         = 10
//   theta     = 1000
//   sampler   = adaptive-l1            # or equally-spaced
//   split     = 1, 1, 1                # stage weights, normalized
//   features  = 1-14, 15-24, 25-36, 37-48 | 1-48
//   remainder = laplace                # or reject
//   mechanisms = optstream-ls, optstream-es, laplace, dft
//   epsilons  = 1, 0.1, 0.01           # compare sweep
//   seeds     = 30                     # compare seeds
//   lipschitz = 10                     # bound experiment
//   bound_seeds = 100
//
// `features` lists the coarse features F_2..F_p left to right, each as
// comma separated closed index ranges; the singleton feature F_1 is always
// present implicitly. Unknown keys and unparseable values are errors that
// name the file, line, and key; nothing is silently coerced.
struct RunConfig {
  PrivacyParams params;
  std::vector<std::vector<std::pair<int, int>>> feature_ranges;
  RemainderPolicy remainder = RemainderPolicy::kLaplaceRelease;
  std::vector<std::string> mechanisms;
  std::vector<double> epsilons;
  int seeds = 30;
  double lipschitz = 10.0;
  int bound_seeds = 100;
};

// The defaults above (the evaluation profile) without reading a file.
RunConfig default_config();

// Parses the file over the defaults. Throws ConfigError on any problem.
RunConfig parse_config_file(const std::string& path);

// The feature set induced by the config (F_1 plus the declared ranges).
FeatureSet config_features(const RunConfig& config);

}  // namespace optstream

#endif  // OPTSTREAM_CONFIG_HPP_
