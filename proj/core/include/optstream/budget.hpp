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

#ifndef OPTSTREAM_BUDGET_HPP_
#define OPTSTREAM_BUDGET_HPP_

#include <array>
#include <optional>

#include "optstream/types.hpp"

namespace optstream {

// Per-period privacy budget split across the three pipeline stages.
// eps_sample + eps_perturb + eps_post equals the total epsilon exactly
// (the last component is always computed as the remainder).
struct BudgetSplit {
  double eps_sample = 0.0;
  double eps_perturb = 0.0;
  double eps_post = 0.0;

  double total() const { return eps_sample + eps_perturb + eps_post; }
};

// Splits `epsilon` among (sample, perturb, post-process) proportionally to
// `weights`, which are normalized and need not sum to one. Defaults:
// (1, 1, 1) for the adaptive sampler and (0, 1, 1) for equally spaced
// sampling, whose index choice is data independent and costs no budget.
// A nonzero sampling weight combined with SamplerKind::kEquallySpaced is
// rejected.
BudgetSplit split_budget(double epsilon, SamplerKind sampler,
                         std::optional<std::array<double, 3>> weights = {});

// Full parameter set for one private release.
struct PrivacyParams {
  int w = 48;                // period length (steps)
  double epsilon = 1.0;      // total budget per w-period
  double alpha = 1.0;        // indistinguishability radius per element
  double theta = 1000.0;     // adaptive sampler score threshold
  int k = 10;                // maximum number of sampled points per period
  SamplerKind sampler = SamplerKind::kAdaptiveL1;
  BudgetSplit split;

  // Throws InvalidParameterError unless: w >= 2, epsilon > 0, alpha > 0,
  // theta >= 0, 2 <= k <= w, the split components are non-negative and sum
  // to epsilon within 1e-12, eps_perturb > 0, the equally spaced sampler
  // has eps_sample == 0, and the adaptive sampler has eps_sample > 0.
  void validate() const;
};

// Convenience constructor: defaults plus the default split for `sampler`.
PrivacyParams make_params(int w, double epsilon, double alpha, double theta,
                          int k, SamplerKind sampler);

// Budget actually consumed by the stages of one released period.
struct BudgetLedger {
  double sample = 0.0;
  double perturb = 0.0;
  double post = 0.0;

  double total() const { return sample + perturb + post; }
};

}  // namespace optstream

#endif  // OPTSTREAM_BUDGET_HPP_
