/* Copyright 2026 The picobench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Test-only reference implementations. These deliberately avoid the
// library's code paths: the DFT is the O(n^2) definition, percentiles use
// selection by counting instead of a sorted copy, and bilinear resize is
// written per output pixel from the interpolation formula.

#ifndef PICOBENCH_TESTS_SUPPORT_ORACLES_H_
#define PICOBENCH_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace picobench::oracle {

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& x) {
  const size_t n = x.size();
  // The n-th roots of unity in extended precision; X[j] uses root (j*t mod n).
  std::vector<std::complex<long double>> roots(n);
  for (size_t k = 0; k < n; ++k) {
    const long double angle = -2.0L * std::numbers::pi_v<long double> *
                              static_cast<long double>(k) / static_cast<long double>(n);
    roots[k] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> out(n);
  for (size_t j = 0; j < n; ++j) {
    std::complex<long double> acc = 0;
    for (size_t t = 0; t < n; ++t) {
      acc += std::complex<long double>(x[t].real(), x[t].imag()) * roots[(j * t) % n];
    }
    out[j] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

// k-th smallest value (0-based) found by counting, O(n^2).
inline double kth_smallest(const std::vector<double>& v, size_t k) {
  for (double candidate : v) {
    size_t less = 0;
    size_t equal = 0;
    for (double x : v) {
      if (x < candidate) ++less;
      else if (x == candidate) ++equal;
    }
    if (less <= k && k < less + equal) return candidate;
  }
  return std::nan("");
}

inline double percentile(const std::vector<double>& v, double p) {
  const double rank = p / 100.0 * static_cast<double>(v.size() - 1);
  const double lo_rank = std::floor(rank);
  const double lo = kth_smallest(v, static_cast<size_t>(lo_rank));
  const double hi = kth_smallest(v, static_cast<size_t>(std::ceil(rank)));
  return lo + (rank - lo_rank) * (hi - lo);
}

inline long double mean_two_pass(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / static_cast<long double>(v.size());
}

inline long double sample_std_two_pass(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const long double m = mean_two_pass(v);
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<long double>(v.size() - 1));
}

// Single output pixel of a half-pixel-center bilinear resize.
inline double bilinear_pixel(const std::vector<double>& img, size_t h, size_t w,
                             size_t c, size_t channels, size_t out_h,
                             size_t out_w, size_t oy, size_t ox) {
  auto coord = [](size_t dst, size_t in, size_t out) {
    double s = (dst + 0.5) * static_cast<double>(in) / static_cast<double>(out) - 0.5;
    return std::min(std::max(s, 0.0), static_cast<double>(in - 1));
  };
  const double sy = coord(oy, h, out_h);
  const double sx = coord(ox, w, out_w);
  const size_t y0 = static_cast<size_t>(sy);
  const size_t x0 = static_cast<size_t>(sx);
  const size_t y1 = std::min(y0 + 1, h - 1);
  const size_t x1 = std::min(x0 + 1, w - 1);
  const double fy = sy - static_cast<double>(y0);
  const double fx = sx - static_cast<double>(x0);
  auto px = [&](size_t y, size_t x) { return img[(y * w + x) * channels + c]; };
  return (1 - fy) * (1 - fx) * px(y0, x0) + (1 - fy) * fx * px(y0, x1) +
         fy * (1 - fx) * px(y1, x0) + fy * fx * px(y1, x1);
}

}  // namespace picobench::oracle

#endif  // PICOBENCH_TESTS_SUPPORT_ORACLES_H_
