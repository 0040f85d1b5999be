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

#include "optstream/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optstream/error.hpp"

namespace optstream {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Unit roots exp(2*pi*I * r / w) for r = 0..w-1. Index arithmetic mod w
// keeps the phase reduction exact for any j * i product.
std::vector<std::complex<double>> unit_roots(int w) {
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(w));
  for (int r = 0; r < w; ++r) {
    const double angle = kTwoPi * static_cast<double>(r) /
                         static_cast<double>(w);
    roots[r] = {std::cos(angle), std::sin(angle)};
  }
  return roots;
}

}  // namespace

std::vector<double> laplace_baseline(std::span<const double> x,
                                     double epsilon, double alpha,
                                     NoiseStream& stream) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("laplace_baseline: epsilon must be > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("laplace_baseline: alpha must be > 0");
  }
  const double sensitivity = static_cast<double>(x.size()) * alpha;
  std::vector<double> out = laplace_mechanism(x, sensitivity, epsilon, stream);
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

std::vector<std::complex<double>> dft(std::span<const double> x) {
  const int w = static_cast<int>(x.size());
  if (w < 1) throw InvalidParameterError("dft: input must be non-empty");
  const auto roots = unit_roots(w);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(w));
  for (int j = 1; j <= w; ++j) {
    long double re = 0.0L;
    long double im = 0.0L;
    for (int i = 1; i <= w; ++i) {
      const auto& r = roots[static_cast<std::size_t>(
          (static_cast<long long>(j) * i) % w)];
      re += static_cast<long double>(x[i - 1]) * r.real();
      im += static_cast<long double>(x[i - 1]) * r.imag();
    }
    out[j - 1] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

std::vector<double> idft(std::span<const std::complex<double>> coeffs) {
  const int w = static_cast<int>(coeffs.size());
  if (w < 1) throw InvalidParameterError("idft: input must be non-empty");
  const auto roots = unit_roots(w);
  std::vector<double> out(static_cast<std::size_t>(w));
  for (int i = 1; i <= w; ++i) {
    long double re = 0.0L;
    for (int j = 1; j <= w; ++j) {
      // Conjugate root: exp(-2*pi*I * j * i / w).
      const auto& r = roots[static_cast<std::size_t>(
          (static_cast<long long>(j) * i) % w)];
      re += static_cast<long double>(coeffs[j - 1].real()) * r.real() +
            static_cast<long double>(coeffs[j - 1].imag()) * r.imag();
    }
    out[i - 1] = static_cast<double>(re / static_cast<long double>(w));
  }
  return out;
}

std::vector<int> dft_keep_order(int w) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(w));
  order.push_back(w);  // DC
  for (int f = 1; static_cast<int>(order.size()) < w; ++f) {
    order.push_back(f);  // +f
    if (static_cast<int>(order.size()) == w) break;
    if (w - f != f && w - f != w) order.push_back(w - f);  // -f
  }
  return order;
}

std::vector<double> dft_baseline(std::span<const double> x, int k,
                                 double epsilon, double alpha,
                                 NoiseStream& stream) {
  const int w = static_cast<int>(x.size());
  if (k < 1 || k > w) {
    throw InvalidParameterError("dft_baseline: need 1 <= k <= w");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("dft_baseline: epsilon must be > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("dft_baseline: alpha must be > 0");
  }
  std::vector<std::complex<double>> coeffs = dft(x);
  const std::vector<int> order = dft_keep_order(w);
  std::vector<char> keep(static_cast<std::size_t>(w) + 1, 0);
  for (int i = 0; i < k; ++i) keep[order[i]] = 1;

  // L2 sensitivity of the coefficient vector is the L2 distance bound of
  // the inputs, alpha * sqrt(w); the noise is split across the k kept
  // coefficients.
  const double scale =
      std::sqrt(static_cast<double>(k)) * alpha *
      std::sqrt(static_cast<double>(w)) / epsilon;
  for (int j = 1; j <= w; ++j) {
    if (keep[j]) {
      coeffs[j - 1] += std::complex<double>(stream.laplace(scale),
                                            stream.laplace(scale));
    } else {
      coeffs[j - 1] = 0.0;
    }
  }
  std::vector<double> out = idft(coeffs);
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

}  // namespace optstream
