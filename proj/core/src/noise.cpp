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

#include "optstream/noise.hpp"

#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed, bool disabled)
    : engine_(seed), disabled_(disabled) {}

std::uint64_t NoiseStream::raw() {
  ++draws_;
  return engine_();
}

double NoiseStream::uniform01() {
  // 53 random bits plus a half-ulp offset: the result lies in
  // [2^-54, 1 - 2^-54], so both endpoints of (0, 1) are excluded.
  return (static_cast<double>(raw() >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseStream::uniform_signed() { return uniform01() - 0.5; }

double NoiseStream::laplace(double b) {
  if (b < 0.0 || !std::isfinite(b)) {
    throw InvalidParameterError("laplace: scale must be finite and >= 0");
  }
  if (disabled_) return 0.0;
  const double u = uniform_signed();
  const double mag = b * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? mag : -mag;
}

double NoiseStream::normal(double sd) {
  if (sd < 0.0 || !std::isfinite(sd)) {
    throw InvalidParameterError("normal: sd must be finite and >= 0");
  }
  if (disabled_) return 0.0;
  const double u1 = uniform01();
  const double u2 = uniform01();
  return sd * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

NoiseSource NoiseSource::seeded(std::uint64_t master_seed) {
  return NoiseSource(master_seed, false);
}

NoiseSource NoiseSource::disabled() { return NoiseSource(0, true); }

NoiseStream NoiseSource::stream(std::uint64_t period,
                                std::string_view stage) const {
  std::uint64_t s = splitmix64(seed_ ^ 0x6f707473747265ULL);
  s = splitmix64(s ^ period);
  s = splitmix64(s ^ fnv1a(stage));
  return NoiseStream(s, disabled_);
}

LaplaceScale::LaplaceScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw InvalidParameterError("LaplaceScale: b must be finite and > 0");
  }
}

double laplace_draw(LaplaceScale scale, NoiseStream& stream) {
  return stream.laplace(scale.b());
}

std::vector<double> laplace_mechanism(std::span<const double> values,
                                      double sensitivity, double epsilon,
                                      NoiseStream& stream) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("laplace_mechanism: epsilon must be > 0");
  }
  if (sensitivity < 0.0 || !std::isfinite(sensitivity)) {
    throw InvalidParameterError(
        "laplace_mechanism: sensitivity must be finite and >= 0");
  }
  const double b = sensitivity / epsilon;
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(v + stream.laplace(b));
  return out;
}

std::vector<SvtAnswer> svt(int n, const std::function<double(int)>& query,
                           const std::function<double(int)>& threshold,
                           const SvtConfig& config, NoiseStream& stream) {
  if (n < 0) throw InvalidParameterError("svt: n must be >= 0");
  if (config.delta < 0.0 || !std::isfinite(config.delta)) {
    throw InvalidParameterError("svt: delta must be finite and >= 0");
  }
  if (config.max_positive < 1) {
    throw InvalidParameterError("svt: max_positive must be >= 1");
  }
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    throw InvalidParameterError("svt: epsilon must be > 0");
  }
  std::vector<SvtAnswer> answers;
  if (n == 0) return answers;
  const double rho = stream.laplace(2.0 * config.delta / config.epsilon);
  const double nu_scale =
      4.0 * config.max_positive * config.delta / config.epsilon;
  int positives = 0;
  for (int i = 0; i < n; ++i) {
    const double nu = stream.laplace(nu_scale);
    if (query(i) + nu >= threshold(i) + rho) {
      answers.push_back(SvtAnswer::kAbove);
      if (++positives == config.max_positive) break;
    } else {
      answers.push_back(SvtAnswer::kBelow);
    }
  }
  return answers;
}

std::vector<SvtAnswer> svt(std::span<const double> queries,
                           std::span<const double> thresholds,
                           const SvtConfig& config, NoiseStream& stream) {
  if (queries.size() != thresholds.size()) {
    throw InvalidParameterError(
        "svt: queries and thresholds must have equal length");
  }
  return svt(
      static_cast<int>(queries.size()), [&](int i) { return queries[i]; },
      [&](int i) { return thresholds[i]; }, config, stream);
}

}  // namespace optstream
