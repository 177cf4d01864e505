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

// Closed-form moments of the two-mode pure Gaussian
// psi(x, y) = N exp(-(a/2) x^2 - b x y - (c/2) y^2) with real a, c > 0 and
// complex b, D = ac - Re(b)^2 > 0. For |Re b| = |Im b| the pair (x, p_x)
// saturates dx dp >= hbar/2 + |sigma_xp| with z3 = y.

#pragma once

#include <cmath>
#include <vector>

#include "urbounds/bounds.hpp"
#include "urbounds/core.hpp"
#include "urbounds/moments.hpp"
#include "urbounds/state_space.hpp"

namespace urbounds {

class ExampleParams {
 public:
  static ExampleParams create(double a, double c, Complex b) {
    if (!(a > 0.0) || !(c > 0.0)) throw Error(ErrorCode::domain, "a and c must be positive");
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw Error(ErrorCode::domain, "b must be finite");
    }
    if (!(a * c - b.real() * b.real() > 0.0)) {
      throw Error(ErrorCode::domain, "D = ac - Re(b)^2 must be positive");
    }
    return ExampleParams(a, c, b);
  }

  double a() const { return a_; }
  double c() const { return c_; }
  Complex b() const { return b_; }
  double D() const { return a_ * c_ - b_.real() * b_.real(); }

 private:
  ExampleParams(double a, double c, Complex b) : a_(a), c_(c), b_(b) {}
  double a_;
  double c_;
  Complex b_;
};

/// Moments of (x, p_x, y); all means vanish.
inline MomentPair analytic_covariances(const ExampleParams& p, const PhysConfig& cfg = {}) {
  cfg.validate();
  const double a = p.a(), c = p.c(), d = p.D();
  const double re = p.b().real(), im = p.b().imag();
  const double h = cfg.hbar;
  RealMatrix X(3, 3);
  RealMatrix Y = RealMatrix::Zero(3, 3);
  X(0, 0) = c / (2.0 * d);
  X(1, 1) = a * h * h / (2.0 * d) * (d + im * im);
  X(2, 2) = a / (2.0 * d);
  X(0, 1) = X(1, 0) = h / (2.0 * d) * re * im;
  X(0, 2) = X(2, 0) = -re / (2.0 * d);
  X(1, 2) = X(2, 1) = -a * h / (2.0 * d) * im;
  Y(0, 1) = h / 2.0;
  Y(1, 0) = -h / 2.0;
  return make_moment_pair(std::move(X), std::move(Y), {"x", "p", "y"});
}

/// Exact two-mode Gaussian description, ordering (x, p_x, y, p_y).
inline GaussianState entangled_gaussian_state(const ExampleParams& p, const PhysConfig& cfg = {}) {
  cfg.validate();
  const double a = p.a(), c = p.c(), d = p.D();
  const double re = p.b().real(), im = p.b().imag();
  const double h = cfg.hbar;
  const double abs_b2 = re * re + im * im;
  RealMatrix cov(4, 4);
  // x, p_x, y, p_y; p_y rows follow from the x rows by a <-> c, x <-> y.
  cov(0, 0) = c / (2.0 * d);
  cov(1, 1) = a * h * h / (2.0 * d) * (d + im * im);
  cov(2, 2) = a / (2.0 * d);
  cov(3, 3) = c * h * h / (2.0 * d) * (d + im * im);
  cov(0, 1) = h / (2.0 * d) * re * im;
  cov(0, 2) = -re / (2.0 * d);
  cov(0, 3) = -c * h / (2.0 * d) * im;
  cov(1, 2) = -a * h / (2.0 * d) * im;
  cov(1, 3) = h * h / (2.0 * d) * re * (a * c - abs_b2);
  cov(2, 3) = h / (2.0 * d) * re * im;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) cov(i, j) = cov(j, i);
  }
  return GaussianState::create(RealVector::Zero(4), std::move(cov), h);
}

/// Purity of the x-subsystem, sqrt((ac - Re^2 b) / (ac + Im^2 b)).
inline double example_purity(const ExampleParams& p) {
  const double im = p.b().imag();
  return std::sqrt(p.D() / (p.a() * p.c() + im * im));
}

/// dx dp - (hbar/2 + |sigma_xp|); zero exactly when |Re b| = |Im b|.
inline double saturation_residual(const ExampleParams& p, const PhysConfig& cfg = {}) {
  const MomentPair mp = analytic_covariances(p, cfg);
  return std::sqrt(mp.X(0, 0) * mp.X(1, 1)) - (cfg.hbar / 2.0 + std::abs(mp.X(0, 1)));
}

struct ScanRow {
  double re_b = 0.0;
  double im_b = 0.0;
  bool valid = false;  // false: D <= 0, the state is not normalizable
  double product = 0.0;
  double rs_bound = 0.0;
  double eq18_bound = 0.0;
  double residual = 0.0;
  double purity = 0.0;
};

/// Uniform grid from lo to hi with the given step (inclusive, rounded).
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw Error(ErrorCode::domain, "invalid scan grid");
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    // Snap to 1e-12 so nominal points such as 0 and +-0.5 are exact.
    out.push_back(std::round((lo + step * static_cast<double>(k)) * 1e12) / 1e12);
  }
  return out;
}

inline std::vector<double> default_scan_axis() { return uniform_grid(-0.9, 0.9, 0.05); }

/// Row-major over (re, im). Points with D <= 0 are kept with valid = false.
inline std::vector<ScanRow> saturation_scan(double a, double c, const std::vector<double>& re_grid,
                                            const std::vector<double>& im_grid,
                                            const PhysConfig& cfg = {}) {
  cfg.validate();
  if (!(a > 0.0) || !(c > 0.0)) throw Error(ErrorCode::domain, "a and c must be positive");
  std::vector<ScanRow> rows;
  rows.reserve(re_grid.size() * im_grid.size());
  for (double re : re_grid) {
    for (double im : im_grid) {
      ScanRow row;
      row.re_b = re;
      row.im_b = im;
      if (a * c - re * re > 0.0) {
        const ExampleParams p = ExampleParams::create(a, c, Complex(re, im));
        const MomentPair mp = analytic_covariances(p, cfg);
        row.valid = true;
        row.product = std::sqrt(mp.X(0, 0) * mp.X(1, 1));
        row.rs_bound = rs_bound(mp);
        row.eq18_bound = coupled_bound_commuting(mp);
        row.residual = row.product - (cfg.hbar / 2.0 + std::abs(mp.X(0, 1)));
        row.purity = example_purity(p);
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace urbounds
