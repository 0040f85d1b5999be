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

#ifndef OPTSTREAM_SYNTH_HPP_
#define OPTSTREAM_SYNTH_HPP_

#include "optstream/noise.hpp"
#include "optstream/types.hpp"

namespace optstream {

// One sinusoidal component of the daily shape. frequency is in cycles per
// day; weight is the amplitude in the series unit (MW); phase shifts the
// peak within the day.
struct Harmonic {
  int frequency = 1;
  double weight = 0.0;
  double phase = 0.0;
};

// Parametric daily load profile:
//   value(t) = daily_mean
//            + amplitude * sum_h weight_h * cos(2*pi*f_h*t/period - phase_h)
//            + Gaussian(noise_sd)
// Integer frequencies make every harmonic zero-mean over a day, so the
// day mean stays at daily_mean (exactly, when noise_sd = 0).
struct SyntheticLoadSpec {
  double daily_mean = 7717.58;
  double amplitude = 1.0;
  int period = 48;
  std::vector<Harmonic> harmonics;
  double noise_sd = 0.0;
};

// The default profile used by the evaluation harness: a regional-scale
// daily curve with a steep morning ramp, midday structure, and a smooth
// evening decay. Mean 7717.58 MW over 48 half-hour steps.
SyntheticLoadSpec default_load_profile();

// Same shape rescaled to another daily mean (weights scale with the mean).
SyntheticLoadSpec scaled_load_profile(double daily_mean);

// Generates `days` consecutive days. Throws ConfigError if any generated
// value fails to be strictly positive, so downstream truncation at zero
// never distorts the ground truth. Deterministic given the stream.
TimeSeries synth_load(const SyntheticLoadSpec& spec, int days,
                      NoiseStream& stream);

// Largest one-step change of the noise-free daily shape, evaluated over a
// full period. Reported so experiments can treat the shape as L-Lipschitz.
double synth_lipschitz(const SyntheticLoadSpec& spec);

}  // namespace optstream

#endif  // OPTSTREAM_SYNTH_HPP_
