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

#ifndef OPTSTREAM_PIPELINE_HPP_
#define OPTSTREAM_PIPELINE_HPP_

#include <span>
#include <vector>

#include "optstream/budget.hpp"
#include "optstream/features.hpp"
#include "optstream/noise.hpp"
#include "optstream/postprocess.hpp"
#include "optstream/sampling.hpp"
#include "optstream/types.hpp"

namespace optstream {

// Adds Laplace(|S| * alpha / eps_p) noise to each sampled value. The scale
// uses the realized sample count, which bounds the L1 sensitivity of the
// sampled vector over alpha-indistinguishable periods.
std::vector<double> perturb(std::span<const double> x_sampled, double eps_p,
                            double alpha, NoiseStream& stream);

// Linear interpolation between consecutive sampled indices; the value at
// the last sampled index is held for any remaining steps. `samples` and
// `values` pair up elementwise and samples.indices[0] must be 1.
std::vector<double> reconstruct(const SampleSet& samples,
                                std::span<const double> values, int w);

// Which pipeline stages run. Disabled sampling keeps every index (the
// perturbation scale grows to w * alpha / eps_p); disabled post-processing
// replaces the QP by clamping at zero. Budget carved out for a disabled
// stage is left unspent, so ablations stay comparable at fixed stage
// budgets.
struct StageToggles {
  bool sampling = true;
  bool post = true;
};

struct ReleaseOptions {
  StageToggles stages;
  PostProcessOptions post;
};

struct StageDiagnostics {
  double sample_us = 0.0;
  double perturb_us = 0.0;
  double post_us = 0.0;
  int qp_iterations = 0;
  double qp_kkt_residual = 0.0;
};

struct ReleaseReport {
  std::vector<double> private_values;  // length w, all >= 0
  SampleSet samples;
  BudgetLedger budget;
  StageDiagnostics diagnostics;
  std::uint64_t period_index = 0;
};

// Releases one w-period under the full budget params.epsilon:
// sample -> perturb -> reconstruct -> post-process. Noise substreams are
// derived from (period.index, stage), so periods and stages are
// independently replayable.
ReleaseReport release_period(const WPeriod& period,
                             const PrivacyParams& params,
                             const FeatureSet& features,
                             const NoiseSource& source,
                             const ReleaseOptions& options = {});

struct StreamRelease {
  TimeSeries private_series;
  std::vector<ReleaseReport> reports;
  // Number of trailing points released by the remainder path (0 when w
  // divides the stream length).
  int remainder_length = 0;
};

// Applies release_period to every full period of the stream. A trailing
// remainder of r points is rejected or released with elementwise
// Laplace(r * alpha / epsilon) noise clamped at zero, per `policy`.
StreamRelease release_stream(const TimeSeries& series,
                             const PrivacyParams& params,
                             const FeatureSet& features,
                             const NoiseSource& source,
                             RemainderPolicy policy =
                                 RemainderPolicy::kLaplaceRelease,
                             const ReleaseOptions& options = {});

}  // namespace optstream

#endif  // OPTSTREAM_PIPELINE_HPP_
