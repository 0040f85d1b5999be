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

#ifndef OPTSTREAM_NOISE_HPP_
#define OPTSTREAM_NOISE_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace optstream {

// One deterministic stream of noise draws. Streams are produced by
// NoiseSource::stream and advance independently of each other.
class NoiseStream {
 public:
  // Raw engine output. Advances the stream.
  std::uint64_t raw();

  // Uniform on the open interval (0, 1).
  double uniform01();

  // Uniform on the open interval (-1/2, 1/2); never returns +-1/2 exactly.
  double uniform_signed();

  // Laplace(0, b) by inverse CDF: sign(u) * b * ln(1 - 2|u|) with u drawn
  // from uniform_signed(). b == 0 yields exactly 0. b < 0 is rejected.
  double laplace(double b);

  // Gaussian(0, sd) by Box-Muller. Consumes two uniforms.
  double normal(double sd);

  // Zero-noise streams return 0 from laplace()/normal() without advancing.
  bool disabled() const { return disabled_; }

  // Number of engine advances so far. Test hook.
  std::uint64_t draw_count() const { return draws_; }

 private:
  friend class NoiseSource;
  NoiseStream(std::uint64_t seed, bool disabled);

  std::mt19937_64 engine_;
  bool disabled_;
  std::uint64_t draws_ = 0;
};

// Root randomness for a whole run. A source is an immutable (seed, mode)
// pair; all mutation lives in the streams it hands out. Substream seeds are
// derived purely from (master seed, period index, stage tag), so any stage
// of any period can be replayed in isolation and two runs with the same
// master seed are identical regardless of evaluation order.
class NoiseSource {
 public:
  static NoiseSource seeded(std::uint64_t master_seed);

  // Every draw from every stream is exactly zero. Intended for tests that
  // check pipeline identities; not reachable from the command line tool.
  static NoiseSource disabled();

  NoiseStream stream(std::uint64_t period, std::string_view stage) const;

  bool is_disabled() const { return disabled_; }
  std::uint64_t master_seed() const { return seed_; }

 private:
  NoiseSource(std::uint64_t seed, bool disabled)
      : seed_(seed), disabled_(disabled) {}

  std::uint64_t seed_;
  bool disabled_;
};

// Strictly positive, finite Laplace scale parameter.
class LaplaceScale {
 public:
  explicit LaplaceScale(double b);
  double b() const { return b_; }

 private:
  double b_;
};

double laplace_draw(LaplaceScale scale, NoiseStream& stream);

// Adds iid Laplace(sensitivity / epsilon) noise to each value. Requires
// epsilon > 0 and sensitivity >= 0.
std::vector<double> laplace_mechanism(std::span<const double> values,
                                      double sensitivity, double epsilon,
                                      NoiseStream& stream);

enum class SvtAnswer : std::uint8_t { kBelow = 0, kAbove = 1 };

struct SvtConfig {
  double delta;       // sensitivity of each query, >= 0
  int max_positive;   // stop after this many above answers, >= 1
  double epsilon;     // total budget, > 0
};

// Sparse vector technique. Draws the threshold noise rho ~ Lap(2*delta/eps)
// once, then per query i draws nu_i ~ Lap(4*max_positive*delta/eps) and
// answers above iff query(i) + nu_i >= threshold(i) + rho. Returns one
// answer per evaluated query and stops after max_positive aboves, so
// queries past the stop are never evaluated.
std::vector<SvtAnswer> svt(int n, const std::function<double(int)>& query,
                           const std::function<double(int)>& threshold,
                           const SvtConfig& config, NoiseStream& stream);

// Convenience overload for fully materialized queries. The spans must have
// equal lengths.
std::vector<SvtAnswer> svt(std::span<const double> queries,
                           std::span<const double> thresholds,
                           const SvtConfig& config, NoiseStream& stream);

}  // namespace optstream

#endif  // OPTSTREAM_NOISE_HPP_
