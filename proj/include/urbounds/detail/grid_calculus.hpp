// Copyright 2026 The urbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "urbounds/core.hpp"

namespace urbounds::detail {

// Half-width of the central first-derivative stencil (order 2m).
inline constexpr int kStencilHalfWidth = 6;

/// Coefficients c_1..c_m of the order-2m central first derivative,
/// f'(x) ~ (1/h) sum_k c_k [f(x+kh) - f(x-kh)].
inline std::vector<double> central_stencil(int m) {
  std::vector<double> coeffs(static_cast<std::size_t>(m));
  auto factorial = [](int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  const double mf2 = factorial(m) * factorial(m);
  for (int k = 1; k <= m; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    coeffs[static_cast<std::size_t>(k - 1)] =
        sign * mf2 / (k * factorial(m - k) * factorial(m + k));
  }
  return coeffs;
}

inline double trapezoid_weight(Eigen::Index i, Eigen::Index n) {
  return (i == 0 || i == n - 1) ? 0.5 : 1.0;
}

/// Derivative along one axis of a row-major 1D/2D array (shape = counts).
/// Values outside the grid are taken as zero; the tail invariant on grid
/// states keeps the truncation far below the stencil error.
inline ComplexVector derivative_along(const ComplexVector& values, Eigen::Index nx,
                                      Eigen::Index ny, int axis, double step,
                                      int half_width = kStencilHalfWidth) {
  const std::vector<double> c = central_stencil(half_width);
  ComplexVector out = ComplexVector::Zero(values.size());
  const Eigen::Index n_along = axis == 0 ? nx : ny;
  const Eigen::Index stride = axis == 0 ? ny : 1;
  const Eigen::Index n_lines = axis == 0 ? ny : nx;
  const Eigen::Index line_stride = axis == 0 ? 1 : ny;
  for (Eigen::Index line = 0; line < n_lines; ++line) {
    const Eigen::Index base = line * line_stride;
    for (Eigen::Index i = 0; i < n_along; ++i) {
      Complex acc = 0.0;
      for (int k = 1; k <= half_width; ++k) {
        const Eigen::Index ip = i + k;
        const Eigen::Index im = i - k;
        const Complex fp = ip < n_along ? values[base + ip * stride] : Complex{};
        const Complex fm = im >= 0 ? values[base + im * stride] : Complex{};
        acc += c[static_cast<std::size_t>(k - 1)] * (fp - fm);
      }
      out[base + i * stride] = acc / step;
    }
  }
  return out;
}

}  // namespace urbounds::detail
