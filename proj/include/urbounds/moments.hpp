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

// Second-moment data of an observable list: means, the symmetrized
// covariance matrix X and the commutator matrix Y with F = X + iY.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "urbounds/core.hpp"
#include "urbounds/detail/grid_calculus.hpp"
#include "urbounds/state_space.hpp"

namespace urbounds {

/// X_mn = <{dz_m, dz_n}>/2, Y_mn = <[z_m, z_n]>/(2i).
struct MomentPair {
  std::vector<std::string> labels;
  RealVector means;
  RealMatrix X;
  RealMatrix Y;

  Eigen::Index size() const { return X.rows(); }

  ComplexMatrix gram() const {
    ComplexMatrix f(X.rows(), X.cols());
    f.real() = X;
    f.imag() = Y;
    return f;
  }

  /// Symmetry of X, antisymmetry of Y and X_nn >= 0, each to 1e-12 * scale.
  void check_structure() const {
    const Eigen::Index n = X.rows();
    if (X.cols() != n || Y.rows() != n || Y.cols() != n || means.size() != n ||
        static_cast<Eigen::Index>(labels.size()) != n) {
      throw Error(ErrorCode::validation, "MomentPair dimensions disagree");
    }
    const double scale = std::max(X.cwiseAbs().maxCoeff(), Y.cwiseAbs().maxCoeff());
    const double tol = 1e-12 * std::max(scale, 1e-300);
    if ((X - X.transpose()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::validation, "X is not symmetric");
    }
    if ((Y + Y.transpose()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::validation, "Y is not antisymmetric");
    }
    if (X.diagonal().minCoeff() < -tol) {
      throw Error(ErrorCode::validation, "X has a negative variance");
    }
  }
};

/// Convenience builder for hand-specified moments (means default to zero).
inline MomentPair make_moment_pair(RealMatrix X, RealMatrix Y,
                                   std::vector<std::string> labels = {}) {
  MomentPair mp;
  const Eigen::Index n = X.rows();
  if (labels.empty()) {
    for (Eigen::Index k = 0; k < n; ++k) labels.push_back("z" + std::to_string(k + 1));
  }
  mp.labels = std::move(labels);
  mp.means = RealVector::Zero(n);
  mp.X = std::move(X);
  mp.Y = std::move(Y);
  mp.check_structure();
  return mp;
}

struct PsdCertificate {
  double min_eigenvalue = 0.0;
  double det_f = 0.0;
  bool passed = false;
  double tolerance_used = 0.0;
};

namespace detail {

inline void symmetrize(MomentPair& mp) {
  mp.X = (0.5 * (mp.X + mp.X.transpose())).eval();
  mp.Y = (0.5 * (mp.Y - mp.Y.transpose())).eval();
}

inline MomentPair gaussian_moments(const GaussianState& s, std::span<const Observable> obs,
                                   const PhysConfig& cfg) {
  if (std::abs(cfg.hbar - s.hbar()) > 1e-12 * s.hbar()) {
    throw Error(ErrorCode::incompatible, "PhysConfig hbar differs from the Gaussian state's hbar");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
  RealMatrix c(n, s.cov().rows());
  MomentPair mp;
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto* lin = std::get_if<LinearOp>(&obs[k].representation());
    if (lin == nullptr || lin->coeffs.size() != s.cov().rows()) {
      throw Error(ErrorCode::incompatible,
                  "observable '" + obs[k].label() + "' is not a quadrature form of this state");
    }
    c.row(k) = lin->coeffs.transpose();
    mp.labels.push_back(obs[k].label());
  }
  mp.means = c * s.mean();
  mp.X = c * s.cov() * c.transpose();
  mp.Y = s.hbar() / 2.0 * c * symplectic_form(s.n_modes()) * c.transpose();
  return mp;
}

inline MomentPair fock_moments(const FockMixedState& s, std::span<const Observable> obs) {
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
  const Eigen::Index dim = s.dim();
  std::vector<ComplexMatrix> centered;
  MomentPair mp;
  mp.means.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto* m = std::get_if<MatrixOp>(&obs[k].representation());
    if (m == nullptr || m->matrix.rows() != dim) {
      throw Error(ErrorCode::incompatible, "observable '" + obs[k].label() +
                                               "' is not a matrix of the state's dimension");
    }
    const double mean = (s.rho() * m->matrix).trace().real();
    mp.means[k] = mean;
    centered.push_back(m->matrix - mean * ComplexMatrix::Identity(dim, dim));
    mp.labels.push_back(obs[k].label());
  }
  mp.X.resize(n, n);
  mp.Y.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const ComplexMatrix rho_da = s.rho() * centered[a];
    for (Eigen::Index b = 0; b < n; ++b) {
      // Tr(rho dA dB) = sum_ij (rho dA)_ij (dB)_ji
      const Complex f = (rho_da.cwiseProduct(centered[b].transpose())).sum();
      mp.X(a, b) = f.real();
      mp.Y(a, b) = f.imag();
    }
  }
  return mp;
}

inline MomentPair grid_moments(const GridWavefunction& psi, std::span<const Observable> obs,
                               const PhysConfig& cfg) {
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
  const ComplexVector& amps = psi.amplitudes();
  const Eigen::Index total = amps.size();
  RealVector w(total);
  for (Eigen::Index k = 0; k < total; ++k) w[k] = psi.weight(k);
  const double norm = (w.array() * amps.cwiseAbs2().array()).sum();

  auto inner = [&](const ComplexVector& u, const ComplexVector& v) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < total; ++k) s += w[k] * std::conj(u[k]) * v[k];
    return s / norm;
  };

  std::vector<const GridOp*> ops;
  std::vector<ComplexVector> applied;
  MomentPair mp;
  mp.means.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto* g = std::get_if<GridOp>(&obs[k].representation());
    if (g == nullptr || g->axis >= static_cast<int>(psi.n_axes())) {
      throw Error(ErrorCode::incompatible,
                  "observable '" + obs[k].label() + "' is not a quadrature of this grid");
    }
    ops.push_back(g);
    ComplexVector v(total);
    if (g->kind == Quadrature::position) {
      for (Eigen::Index idx = 0; idx < total; ++idx) v[idx] = psi.coord(idx, g->axis) * amps[idx];
    } else {
      v = Complex(0.0, -cfg.hbar) *
          derivative_along(amps, psi.nx(), psi.ny(), g->axis, psi.axis(g->axis).step);
    }
    mp.means[k] = inner(amps, v).real();
    applied.push_back(std::move(v));
    mp.labels.push_back(obs[k].label());
  }
  for (Eigen::Index k = 0; k < n; ++k) applied[k] -= mp.means[k] * amps;

  mp.X.resize(n, n);
  mp.Y = RealMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a; b < n; ++b) {
      const double x = inner(applied[a], applied[b]).real();
      mp.X(a, b) = x;
      mp.X(b, a) = x;
      // Canonical commutators: [q_k, p_k] = i hbar, all other pairs commute.
      if (ops[a]->axis == ops[b]->axis && ops[a]->kind != ops[b]->kind) {
        const double y = ops[a]->kind == Quadrature::position ? cfg.hbar / 2.0 : -cfg.hbar / 2.0;
        mp.Y(a, b) = y;
        mp.Y(b, a) = -y;
      }
    }
  }
  return mp;
}

}  // namespace detail

/// Moments of 2 or 3 observables sharing the state's representation.
inline MomentPair covariance_matrices(const State& state, std::span<const Observable> obs,
                                      const PhysConfig& cfg = {}) {
  cfg.validate();
  if (obs.size() < 2 || obs.size() > 3) {
    throw Error(ErrorCode::validation, "covariance_matrices takes 2 or 3 observables");
  }
  MomentPair mp = std::visit(
      [&](const auto& s) -> MomentPair {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianState>) {
          return detail::gaussian_moments(s, obs, cfg);
        } else if constexpr (std::is_same_v<T, FockMixedState>) {
          return detail::fock_moments(s, obs);
        } else {
          return detail::grid_moments(s, obs, cfg);
        }
      },
      state);
  detail::symmetrize(mp);
  return mp;
}

inline MomentPair covariance_matrices(const State& state, const std::vector<std::string>& labels,
                                      const PhysConfig& cfg = {}) {
  std::vector<Observable> obs;
  for (const auto& l : labels) obs.push_back(observable_from_label(l, state, cfg));
  return covariance_matrices(state, std::span<const Observable>(obs), cfg);
}

/// Eigenvalue certificate that F = X + iY is positive semidefinite, with a
/// tolerance relative to trace(X).
inline PsdCertificate gram_psd_check(const MomentPair& mp, double rel_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mp.gram(), Eigen::EigenvaluesOnly);
  PsdCertificate cert;
  cert.min_eigenvalue = es.eigenvalues().minCoeff();
  cert.det_f = es.eigenvalues().prod();
  cert.tolerance_used = rel_tol * mp.X.trace();
  cert.passed = cert.min_eigenvalue >= -cert.tolerance_used;
  return cert;
}

/// Tr(rho^2). Pure grid states return exactly 1; Gaussian states use
/// (hbar/2)^n / sqrt(det cov).
inline double purity(const State& state) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianState>) {
          return std::pow(s.hbar() / 2.0, static_cast<double>(s.n_modes())) /
                 std::sqrt(s.cov().determinant());
        } else if constexpr (std::is_same_v<T, FockMixedState>) {
          return s.rho().cwiseAbs2().sum();
        } else {
          return 1.0;
        }
      },
      state);
}

struct ReducedMoments {
  double sigma_xx = 0.0;
  double sigma_pp = 0.0;
  double sigma_xp = 0.0;
  double purity = 0.0;
};

/// Single-mode moments of the kept axis and the purity of the reduced state
/// rho(x, x') = int psi(x, y) psi*(x', y) dy, by trapezoid double integration.
inline ReducedMoments reduced_moments(const GridWavefunction& psi, int keep_axis,
                                      const PhysConfig& cfg = {}) {
  if (psi.n_axes() != 2) throw Error(ErrorCode::validation, "reduced_moments needs a 2D grid");
  if (keep_axis != 0 && keep_axis != 1) {
    throw Error(ErrorCode::validation, "keep axis must be 0 or 1");
  }
  const std::vector<Observable> obs{Observable::grid("q", Quadrature::position, keep_axis),
                                    Observable::grid("p", Quadrature::momentum, keep_axis)};
  const MomentPair mp = covariance_matrices(State(psi), std::span<const Observable>(obs), cfg);

  const Eigen::Index nx = psi.nx();
  const Eigen::Index ny = psi.ny();
  const GridAxis& ax = psi.axis(0);
  const GridAxis& ay = psi.axis(1);
  ComplexMatrix b(nx, ny);
  for (Eigen::Index i = 0; i < nx; ++i) {
    const double wx = ax.step * detail::trapezoid_weight(i, nx);
    for (Eigen::Index j = 0; j < ny; ++j) {
      const double wy = ay.step * detail::trapezoid_weight(j, ny);
      b(i, j) = std::sqrt(wx * wy) * psi.amplitudes()[i * ny + j];
    }
  }
  if (keep_axis == 1) b.transposeInPlace();
  const double norm = b.cwiseAbs2().sum();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw Error(ErrorCode::accuracy, "quadrature norm drift exceeds 1e-6");
  }
  // Tr(rho^2) = ||B B^dag||_F^2 = ||B^dag B||_F^2; use the smaller product.
  const ComplexMatrix rho = b.rows() <= b.cols() ? ComplexMatrix(b * b.adjoint())
                                                 : ComplexMatrix(b.adjoint() * b);
  ReducedMoments out;
  out.sigma_xx = mp.X(0, 0);
  out.sigma_pp = mp.X(1, 1);
  out.sigma_xp = mp.X(0, 1);
  out.purity = rho.cwiseAbs2().sum() / (norm * norm);
  return out;
}

}  // namespace urbounds
