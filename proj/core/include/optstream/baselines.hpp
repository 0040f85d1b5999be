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

#ifndef OPTSTREAM_BASELINES_HPP_
#define OPTSTREAM_BASELINES_HPP_

#include <complex>
#include <span>
#include <vector>

#include "optstream/noise.hpp"

namespace optstream {

// Per-element Laplace release of one w-period: x_t + Lap(w * alpha / eps),
// negatives clamped to zero. w is taken from the input length.
std::vector<double> laplace_baseline(std::span<const double> x, double epsilon,
                                     double alpha, NoiseStream& stream);

// Discrete Fourier transform with 1-based frequency index j = 1..w:
// X_j = sum_{i=1..w} x_i * exp(+2*pi*I * j * i / w). The constant (DC)
// component sits at j = w. Returned in j order, X_j at position j - 1.
// Direct O(w^2) evaluation; phases are reduced exactly via integer
// arithmetic and sums are accumulated in extended precision.
std::vector<std::complex<double>> dft(std::span<const double> x);

// Inverse transform, returning the real parts of
// (1/w) * sum_j X_j * exp(-2*pi*I * j * i / w). For coefficient vectors
// produced by dft() this recovers the input: idft(dft(x)) == x up to
// roundoff.
std::vector<double> idft(std::span<const std::complex<double>> coeffs);

// Frequency indices j in nearest-to-DC order: DC first (j = w), then the
// +-1 pair, the +-2 pair, and so on. Used to pick which k coefficients the
// DFT baseline keeps.
std::vector<int> dft_keep_order(int w);

// DFT perturbation baseline: keep the k coefficients closest to DC, add
// Laplace(sqrt(k) * alpha * sqrt(w) / eps) noise independently to the real
// and imaginary part of each kept coefficient, zero the rest, invert, and
// clamp negatives to zero. alpha * sqrt(w) bounds the L2 distance of
// alpha-indistinguishable periods. Requires 1 <= k <= w.
std::vector<double> dft_baseline(std::span<const double> x, int k,
                                 double epsilon, double alpha,
                                 NoiseStream& stream);

}  // namespace optstream

#endif  // OPTSTREAM_BASELINES_HPP_
