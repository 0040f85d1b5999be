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

#include "optstream/synth.hpp"

#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double shape_value(const SyntheticLoadSpec& spec, int step_in_day) {
  double v = spec.daily_mean;
  for (const Harmonic& h : spec.harmonics) {
    v += spec.amplitude * h.weight *
         std::cos(kTwoPi * h.frequency * step_in_day /
                      static_cast<double>(spec.period) -
                  h.phase);
  }
  return v;
}

void validate(const SyntheticLoadSpec& spec) {
  if (!(spec.daily_mean > 0.0) || !std::isfinite(spec.daily_mean)) {
    throw ConfigError("synth_load: daily_mean must be > 0");
  }
  if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
    throw ConfigError("synth_load: amplitude must be > 0");
  }
  if (spec.period < 2) {
    throw ConfigError("synth_load: period must be >= 2");
  }
  if (spec.noise_sd < 0.0 || !std::isfinite(spec.noise_sd)) {
    throw ConfigError("synth_load: noise_sd must be >= 0");
  }
  for (const Harmonic& h : spec.harmonics) {
    if (h.frequency < 1) {
      throw ConfigError("synth_load: harmonic frequency must be >= 1");
    }
  }
}

}  // namespace

SyntheticLoadSpec default_load_profile() {
  return scaled_load_profile(7717.58);
}

SyntheticLoadSpec scaled_load_profile(double daily_mean) {
  SyntheticLoadSpec spec;
  spec.daily_mean = daily_mean;
  spec.amplitude = daily_mean / 7717.58;
  spec.period = 48;
  spec.noise_sd = 0.0;
  // Harmonic table of a stylised regional day: a pre-dawn trough near
  // 4.8 GW, a steep surge between 06:30 and 07:00 up to a 9.6 GW morning
  // peak, a midday plateau stepping down through the early afternoon, a
  // higher evening plateau, and an off-peak setback at midnight. The upper
  // harmonics carry the sharp switching edges of that curve.
  spec.harmonics = {
      {1, 1547.2896867972975, -2.6646396245569899},
      {2, 1194.0598861875706, -1.5557315527056141},
      {3, 452.40250230798193, -0.34883024935427004},
      {4, 287.02564947520926, 3.0847738968157454},
      {5, 443.50285565307445, -2.0365918658768623},
      {6, 276.98531003594456, -0.91253928648563587},
      {7, 79.137880878932734, 2.0184866700104456},
      {8, 246.39202052375356, -2.6670546471564438},
      {9, 228.01565925072063, -1.7181567513492164},
      {10, 61.884262747011498, -0.41986481307845863},
      {11, 134.48064395514214, 2.9521321077556606},
      {12, 196.85240170126403, -2.2977902230958196},
      {13, 109.57636826447776, -1.3454432403965759},
      {14, 46.988548986918794, 2.0649741567554156},
      {15, 147.04634954485149, -2.9880083966595685},
      {16, 134.3606258461821, -2.0406564939329588},
      {17, 28.766582374181841, -0.56480974851051158},
      {18, 108.30915997921467, 2.599411894269017},
      {19, 145.40315103479071, -2.6783367191705745},
      {20, 74.807336902508908, -1.6390807251160946},
      {21, 52.196322930537406, 1.8561794929612183},
      {22, 136.09662514176651, 2.9607174505005545},
      {23, 112.62217645142408, -2.3024109998861046},
  };
  return spec;
}

TimeSeries synth_load(const SyntheticLoadSpec& spec, int days,
                      NoiseStream& stream) {
  validate(spec);
  if (days < 1) {
    throw InvalidParameterError("synth_load: days must be >= 1");
  }
  TimeSeries out;
  out.start_index = 0;
  out.values.reserve(static_cast<std::size_t>(days) * spec.period);
  for (int d = 0; d < days; ++d) {
    for (int t = 0; t < spec.period; ++t) {
      const double v = shape_value(spec, t) + stream.normal(spec.noise_sd);
      if (!(v > 0.0)) {
        throw ConfigError(
            "synth_load: generated value " + std::to_string(v) + " at step " +
            std::to_string(d * spec.period + t) +
            " is not strictly positive; lower the weights or noise_sd");
      }
      out.values.push_back(v);
    }
  }
  return out;
}

double synth_lipschitz(const SyntheticLoadSpec& spec) {
  validate(spec);
  double worst = 0.0;
  for (int t = 0; t < spec.period; ++t) {
    const double a = shape_value(spec, t);
    const double b = shape_value(spec, (t + 1) % spec.period);
    worst = std::max(worst, std::abs(b - a));
  }
  return worst;
}

}  // namespace optstream
