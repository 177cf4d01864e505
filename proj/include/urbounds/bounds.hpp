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

// Lower bounds on uncertainty products. Indices are zero-based: z1, z2 are
// the pair whose product is bounded and z3 is the coupled third observable.
//
// All bounds except correlation_form() apply to the uncertainty product
// dz1 * dz2 = sqrt(X11 X22); correlation_form() bounds the variance product
// X11 X22.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "urbounds/core.hpp"
#include "urbounds/moments.hpp"

namespace urbounds {

namespace detail {

inline void check_pair(const MomentPair& mp, Eigen::Index i, Eigen::Index j) {
  if (i == j || i < 0 || j < 0 || i >= mp.size() || j >= mp.size()) {
    throw Error(ErrorCode::validation, "bound indices must be distinct and in range");
  }
}

inline void check_triple(const MomentPair& mp) {
  if (mp.size() != 3) throw Error(ErrorCode::validation, "operation needs three observables");
}

inline void check_third_spread(const MomentPair& mp) {
  const double eps = 1e-12 * mp.X.trace();
  if (!(mp.X(2, 2) > eps)) {
    throw Error(ErrorCode::deterministic_third,
                "variance of the third observable is zero (<= 1e-12 trace X)");
  }
}

}  // namespace detail

/// |Y_ij|: the commutator-only bound.
inline double robertson_bound(const MomentPair& mp, Eigen::Index i = 0, Eigen::Index j = 1) {
  detail::check_pair(mp, i, j);
  return std::abs(mp.Y(i, j));
}

/// G_ij = sqrt(X_ij^2 + Y_ij^2).
inline double rs_bound(const MomentPair& mp, Eigen::Index i = 0, Eigen::Index j = 1) {
  detail::check_pair(mp, i, j);
  const double x = mp.X(i, j);
  const double y = mp.Y(i, j);
  return std::sqrt(x * x + y * y);
}

struct CorrelationForm {
  double r = 0.0;
  double bound = 0.0;  // on the variance product X_ii X_jj
};

/// r = X_ij / sqrt(X_ii X_jj) and the bound Y_ij^2 / (1 - r^2).
inline CorrelationForm correlation_form(const MomentPair& mp, Eigen::Index i = 0,
                                        Eigen::Index j = 1) {
  detail::check_pair(mp, i, j);
  const double vi = mp.X(i, i);
  const double vj = mp.X(j, j);
  if (!(vi > 0.0) || !(vj > 0.0)) {
    throw Error(ErrorCode::degenerate_input, "correlation coefficient needs nonzero variances");
  }
  CorrelationForm out;
  out.r = mp.X(i, j) / std::sqrt(vi * vj);
  const double one_minus = 1.0 - out.r * out.r;
  const double y2 = mp.Y(i, j) * mp.Y(i, j);
  if (one_minus > 0.0) {
    out.bound = y2 / one_minus;
  } else {
    // |r| = 1 is only reachable with a vanishing commutator term.
    out.bound = y2 == 0.0 ? vi * vj : std::numeric_limits<double>::infinity();
  }
  return out;
}

/// LHS - RHS of the three-observable determinant inequality written out in
/// matrix elements; algebraically equal to det(X + iY).
inline double triple_det_residual(const MomentPair& mp) {
  detail::check_triple(mp);
  const RealMatrix& X = mp.X;
  const RealMatrix& Y = mp.Y;
  const double x11 = X(0, 0), x22 = X(1, 1), x33 = X(2, 2);
  const double x12 = X(0, 1), x13 = X(0, 2), x23 = X(1, 2), x31 = X(2, 0);
  const double y12 = Y(0, 1), y13 = Y(0, 2), y23 = Y(1, 2), y31 = Y(2, 0);
  const double lhs = x11 * x22 * x33;
  const double rhs = x11 * (x23 * x23 + y23 * y23) + x22 * (x13 * x13 + y13 * y13) +
                     x33 * (x12 * x12 + y12 * y12) +
                     2.0 * (x12 * y23 * y31 + x23 * y31 * y12 + x31 * y12 * y23 - x12 * x23 * x31);
  return lhs - rhs;
}

/// det(X + iY) by LU decomposition (real part; the imaginary part vanishes
/// for Hermitian F up to rounding).
inline double gram_determinant(const MomentPair& mp) {
  return mp.gram().partialPivLu().determinant().real();
}

struct CoupledBound {
  double omega = 0.0;
  double gamma = 0.0;
  double radicand = 0.0;
  std::optional<double> bound;  // empty when the radicand is negative (vacuous)

  bool vacuous() const { return !bound.has_value(); }
};

/// dz1 dz2 >= sqrt(G12^2 + Omega^2 + 2 Gamma) + Omega with
/// Omega = |G13 G23| / X33 and
/// Gamma = [X12 (Y23 Y31 - X23 X31) + Y12 (X23 Y31 + Y23 X31)] / X33.
inline CoupledBound coupled_bound(const MomentPair& mp) {
  detail::check_triple(mp);
  detail::check_third_spread(mp);
  const RealMatrix& X = mp.X;
  const RealMatrix& Y = mp.Y;
  const double x33 = X(2, 2);
  const double x12 = X(0, 1), x13 = X(0, 2), x23 = X(1, 2), x31 = X(2, 0);
  const double y12 = Y(0, 1), y13 = Y(0, 2), y23 = Y(1, 2), y31 = Y(2, 0);
  const double g12_sq = x12 * x12 + y12 * y12;
  const double g13 = std::sqrt(x13 * x13 + y13 * y13);
  const double g23 = std::sqrt(x23 * x23 + y23 * y23);

  CoupledBound out;
  out.omega = std::abs(g13 * g23) / x33;
  out.gamma = (x12 * (y23 * y31 - x23 * x31) + y12 * (x23 * y31 + y23 * x31)) / x33;
  out.radicand = g12_sq + out.omega * out.omega + 2.0 * out.gamma;
  const double scale = X(0, 0) * X(1, 1);
  if (out.radicand < -1e-12 * scale) return out;
  out.bound = std::sqrt(std::max(out.radicand, 0.0)) + out.omega;
  return out;
}

/// Special case [z1, z3] = [z2, z3] = 0:
/// dz1 dz2 >= sqrt(Y12^2 + (X12 - X13 X23 / X33)^2) + |X13 X23| / X33.
inline double coupled_bound_commuting(const MomentPair& mp) {
  detail::check_triple(mp);
  const double tol = 1e-12 * mp.X.trace();
  if (std::abs(mp.Y(0, 2)) > tol || std::abs(mp.Y(1, 2)) > tol) {
    throw Error(ErrorCode::wrong_regime, "third observable does not commute with z1 and z2");
  }
  detail::check_third_spread(mp);
  const RealMatrix& X = mp.X;
  const double x33 = X(2, 2);
  const double shifted = X(0, 1) - X(0, 2) * X(1, 2) / x33;
  const double y12 = mp.Y(0, 1);
  return std::sqrt(y12 * y12 + shifted * shifted) + std::abs(X(0, 2) * X(1, 2)) / x33;
}

/// Whether the commuting-case formula applies to these moments.
inline bool third_commutes(const MomentPair& mp) {
  if (mp.size() != 3) return false;
  const double tol = 1e-12 * mp.X.trace();
  return std::abs(mp.Y(0, 2)) <= tol && std::abs(mp.Y(1, 2)) <= tol;
}

struct BoundReport {
  std::vector<std::string> labels;
  double product = 0.0;           // dz1 dz2
  double variance_product = 0.0;  // X11 X22
  double heisenberg = 0.0;        // hbar/2, reference value for (x, p)
  double robertson = 0.0;
  double rs = 0.0;
  double corr_coeff_r = 0.0;
  double corr_bound = 0.0;  // on variance_product
  std::optional<double> new_bound;
  bool new_bound_vacuous = false;
  double omega = 0.0;
  double gamma = 0.0;
  std::optional<double> det3_residual;
  std::optional<double> commuting_bound;
  double best_bound = 0.0;
  std::string best_source;
  double slack = 0.0;

  /// slack >= -rel_tol * product
  bool consistent(double rel_tol = 1e-9) const { return slack >= -rel_tol * product; }
};

/// Evaluates every applicable bound for moments of (z1, z2) or (z1, z2, z3).
/// best_bound is the largest of robertson, rs, the coupled bound (when not
/// vacuous) and the commuting-case bound (when z3 commutes with z1, z2).
inline BoundReport bound_report(const MomentPair& mp, const PhysConfig& cfg = {}) {
  if (mp.size() != 2 && mp.size() != 3) {
    throw Error(ErrorCode::validation, "bound_report takes 2 or 3 observables");
  }
  mp.check_structure();
  BoundReport rep;
  rep.labels = mp.labels;
  rep.variance_product = mp.X(0, 0) * mp.X(1, 1);
  rep.product = std::sqrt(rep.variance_product);
  rep.heisenberg = cfg.hbar / 2.0;
  rep.robertson = robertson_bound(mp);
  rep.rs = rs_bound(mp);
  const CorrelationForm cf = correlation_form(mp);
  rep.corr_coeff_r = cf.r;
  rep.corr_bound = cf.bound;

  rep.best_bound = rep.robertson;
  rep.best_source = "robertson";
  auto consider = [&rep](double value, const char* source) {
    if (value > rep.best_bound) {
      rep.best_bound = value;
      rep.best_source = source;
    }
  };
  consider(rep.rs, "rs");

  if (mp.size() == 3) {
    rep.det3_residual = triple_det_residual(mp);
    const CoupledBound cb = coupled_bound(mp);
    rep.omega = cb.omega;
    rep.gamma = cb.gamma;
    rep.new_bound = cb.bound;
    rep.new_bound_vacuous = cb.vacuous();
    if (cb.bound) consider(*cb.bound, "coupled");
    if (third_commutes(mp)) {
      rep.commuting_bound = coupled_bound_commuting(mp);
      consider(*rep.commuting_bound, "commuting");
    }
  }
  rep.slack = rep.product - rep.best_bound;
  return rep;
}

inline BoundReport bound_report(const State& state, std::span<const Observable> obs,
                                const PhysConfig& cfg = {}) {
  return bound_report(covariance_matrices(state, obs, cfg), cfg);
}

// ---------------------------------------------------------------------------
// Purity-bounded relation

namespace detail {
inline void check_purity_domain(double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw Error(ErrorCode::domain, "purity must lie in (0, 1]");
}
}  // namespace detail

/// Approximate frontier (4 + sqrt(16 + 9 mu^2)) / (9 mu).
inline double phi_tilde(double mu) {
  detail::check_purity_domain(mu);
  return (4.0 + std::sqrt(16.0 + 9.0 * mu * mu)) / (9.0 * mu);
}

/// Small-mu expansion 8/(9 mu) (1 + 9 mu^2 / 64).
inline double phi_asymptotic(double mu) {
  detail::check_purity_domain(mu);
  return 8.0 / (9.0 * mu) * (1.0 + 9.0 * mu * mu / 64.0);
}

/// (hbar/2) phi_tilde(mu), a lower bound on sqrt(det sigma) at purity mu.
inline double purity_bound(double mu, const PhysConfig& cfg = {}) {
  return cfg.hbar / 2.0 * phi_tilde(mu);
}

}  // namespace urbounds
