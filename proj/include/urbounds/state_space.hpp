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

// Quantum states and observables on which the bounds are evaluated: Gaussian
// covariance descriptions, Fock-basis density matrices and pure states
// sampled on uniform 1D/2D grids. Everything is immutable after
// construction; factories validate their invariants and throw urbounds::Error.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "urbounds/core.hpp"
#include "urbounds/detail/grid_calculus.hpp"

namespace urbounds {

namespace detail {

inline double max_abs_asymmetry(const RealMatrix& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

inline double max_abs_non_hermiticity(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Block-diagonal symplectic form for the ordering (q1, p1, q2, p2, ...).
inline RealMatrix symplectic_form(Eigen::Index n_modes) {
  RealMatrix j = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gaussian states

class GaussianState {
 public:
  /// Validates symmetry and the physicality condition cov + (i hbar/2) J >= 0.
  static GaussianState create(RealVector mean, RealMatrix cov, double hbar = 1.0) {
    if (!(hbar > 0.0)) throw Error(ErrorCode::validation, "hbar must be positive");
    if (cov.rows() == 0 || cov.rows() % 2 != 0 || cov.rows() != cov.cols()) {
      throw Error(ErrorCode::validation, "covariance must be square with even size 2n, n >= 1");
    }
    if (mean.size() != cov.rows()) {
      throw Error(ErrorCode::validation, "mean length must equal covariance size");
    }
    if (!cov.allFinite() || !mean.allFinite()) {
      throw Error(ErrorCode::validation, "non-finite entries in Gaussian state");
    }
    if (detail::max_abs_asymmetry(cov) > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::validation, "covariance is not symmetric to 1e-12");
    }
    const Eigen::Index n = cov.rows() / 2;
    ComplexMatrix f = cov.cast<Complex>();
    f += Complex(0.0, hbar / 2.0) * detail::symplectic_form(n).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(f, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-10 * cov.trace()) {
      throw Error(ErrorCode::validation,
                  "covariance violates cov + (i hbar/2) J >= 0 (min eigenvalue " +
                      std::to_string(min_eig) + ")");
    }
    GaussianState s;
    s.mean_ = std::move(mean);
    s.cov_ = 0.5 * (cov + cov.transpose());
    s.hbar_ = hbar;
    return s;
  }

  Eigen::Index n_modes() const { return cov_.rows() / 2; }
  const RealVector& mean() const { return mean_; }
  const RealMatrix& cov() const { return cov_; }
  double hbar() const { return hbar_; }

 private:
  GaussianState() = default;
  RealVector mean_;
  RealMatrix cov_;
  double hbar_ = 1.0;
};

// ---------------------------------------------------------------------------
// Fock-basis density matrices

/// Whether the top number level must be (numerically) empty. Ladder-built
/// quadratures are exact only on states that leave the last level vacant.
enum class Truncation { enforce, unchecked };

class FockMixedState {
 public:
  static FockMixedState create(ComplexMatrix rho, Truncation truncation = Truncation::enforce) {
    const Eigen::Index dim = rho.rows();
    if (dim < 1 || rho.cols() != dim) {
      throw Error(ErrorCode::validation, "density matrix must be square with dim >= 1");
    }
    if (!rho.allFinite()) throw Error(ErrorCode::validation, "non-finite density matrix entry");
    if (detail::max_abs_non_hermiticity(rho) > 1e-12) {
      throw Error(ErrorCode::validation, "density matrix is not Hermitian to 1e-12");
    }
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
      throw Error(ErrorCode::validation, "density matrix trace differs from 1 by more than 1e-10");
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
      throw Error(ErrorCode::validation, "density matrix has a negative eigenvalue below -1e-10");
    }
    if (truncation == Truncation::enforce && rho(dim - 1, dim - 1).real() >= 1e-8) {
      throw Error(ErrorCode::truncation,
                  "top Fock level occupation >= 1e-8; enlarge the truncation dimension");
    }
    FockMixedState s;
    s.rho_ = std::move(rho);
    return s;
  }

  Eigen::Index dim() const { return rho_.rows(); }
  const ComplexMatrix& rho() const { return rho_; }

 private:
  FockMixedState() = default;
  ComplexMatrix rho_;
};

// ---------------------------------------------------------------------------
// Grid wavefunctions

struct GridAxis {
  double origin = 0.0;
  double step = 1.0;
  Eigen::Index count = 0;

  double coord(Eigen::Index i) const { return origin + step * static_cast<double>(i); }
};

inline constexpr Eigen::Index kDefaultGridPoints = 512;
inline constexpr double kDefaultGridHalfWidthStd = 10.0;

/// Uniform axis covering center +- half_width_std standard deviations.
inline GridAxis auto_axis(double center, double std_dev, Eigen::Index count = kDefaultGridPoints,
                          double half_width_std = kDefaultGridHalfWidthStd) {
  const double half = half_width_std * std_dev;
  return GridAxis{center - half, 2.0 * half / static_cast<double>(count - 1), count};
}

class GridWavefunction {
 public:
  /// Amplitudes are row-major: index = i * count(axis 1) + j for 2D grids.
  static GridWavefunction create(std::vector<GridAxis> axes, ComplexVector amplitudes) {
    if (axes.empty() || axes.size() > 2) {
      throw Error(ErrorCode::validation, "grid wavefunction needs 1 or 2 axes");
    }
    Eigen::Index total = 1;
    for (const auto& ax : axes) {
      if (ax.count < 3 || !(ax.step > 0.0) || !std::isfinite(ax.origin)) {
        throw Error(ErrorCode::validation, "grid axis needs count >= 3 and step > 0");
      }
      total *= ax.count;
    }
    if (amplitudes.size() != total) {
      throw Error(ErrorCode::validation, "amplitude count does not match the grid");
    }
    if (!amplitudes.allFinite()) throw Error(ErrorCode::validation, "non-finite amplitude");
    GridWavefunction psi;
    psi.axes_ = std::move(axes);
    psi.amps_ = std::move(amplitudes);
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-8) {
      throw Error(ErrorCode::validation,
                  "wavefunction norm differs from 1 by more than 1e-8 (norm " +
                      std::to_string(norm) + ")");
    }
    const double peak = psi.amps_.cwiseAbs().maxCoeff();
    if (psi.max_boundary_abs() >= 1e-10 * peak) {
      throw Error(ErrorCode::grid_too_small,
                  "wavefunction tails exceed 1e-10 of the peak at the grid boundary");
    }
    return psi;
  }

  std::size_t n_axes() const { return axes_.size(); }
  const GridAxis& axis(std::size_t k) const { return axes_.at(k); }
  const std::vector<GridAxis>& axes() const { return axes_; }
  const ComplexVector& amplitudes() const { return amps_; }

  Eigen::Index nx() const { return axes_[0].count; }
  Eigen::Index ny() const { return axes_.size() == 2 ? axes_[1].count : 1; }

  /// Trapezoid weight (including cell volume) of flat index idx.
  double weight(Eigen::Index idx) const {
    const Eigen::Index i = idx / ny();
    double w = axes_[0].step * detail::trapezoid_weight(i, nx());
    if (axes_.size() == 2) {
      const Eigen::Index j = idx % ny();
      w *= axes_[1].step * detail::trapezoid_weight(j, ny());
    }
    return w;
  }

  /// Coordinate of flat index idx along the given axis.
  double coord(Eigen::Index idx, int axis) const {
    return axis == 0 ? axes_[0].coord(idx / ny()) : axes_[1].coord(idx % ny());
  }

  double norm() const {
    double s = 0.0;
    for (Eigen::Index k = 0; k < amps_.size(); ++k) s += weight(k) * std::norm(amps_[k]);
    return s;
  }

 private:
  GridWavefunction() = default;

  double max_boundary_abs() const {
    double m = 0.0;
    const Eigen::Index nx_ = nx();
    const Eigen::Index ny_ = ny();
    for (Eigen::Index idx = 0; idx < amps_.size(); ++idx) {
      const Eigen::Index i = idx / ny_;
      const Eigen::Index j = idx % ny_;
      bool edge = (i == 0 || i == nx_ - 1);
      if (axes_.size() == 2) edge = edge || j == 0 || j == ny_ - 1;
      if (edge) m = std::max(m, std::abs(amps_[idx]));
    }
    return m;
  }

  std::vector<GridAxis> axes_;
  ComplexVector amps_;
};

// ---------------------------------------------------------------------------
// Observables

enum class Quadrature { position, momentum };

struct MatrixOp {
  ComplexMatrix matrix;
};

struct GridOp {
  Quadrature kind = Quadrature::position;
  int axis = 0;
};

/// Linear form sum_k coeffs[k] R_k over canonical quadratures R = (q1, p1, q2, p2, ...).
struct LinearOp {
  RealVector coeffs;
};

class Observable {
 public:
  using Representation = std::variant<MatrixOp, GridOp, LinearOp>;

  static Observable matrix(std::string label, ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
      throw Error(ErrorCode::validation, "observable matrix must be square");
    }
    if (detail::max_abs_non_hermiticity(m) > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
      throw Error(ErrorCode::validation, "observable '" + label + "' is not Hermitian to 1e-12");
    }
    return Observable(std::move(label), MatrixOp{0.5 * (m + m.adjoint())});
  }

  static Observable grid(std::string label, Quadrature kind, int axis) {
    if (axis < 0 || axis > 1) throw Error(ErrorCode::validation, "grid axis must be 0 or 1");
    return Observable(std::move(label), GridOp{kind, axis});
  }

  static Observable linear(std::string label, RealVector coeffs) {
    if (coeffs.size() == 0 || coeffs.size() % 2 != 0) {
      throw Error(ErrorCode::validation, "linear observable needs 2n coefficients");
    }
    return Observable(std::move(label), LinearOp{std::move(coeffs)});
  }

  const std::string& label() const { return label_; }
  const Representation& representation() const { return rep_; }

 private:
  Observable(std::string label, Representation rep)
      : label_(std::move(label)), rep_(std::move(rep)) {}

  std::string label_;
  Representation rep_;
};

using State = std::variant<GaussianState, FockMixedState, GridWavefunction>;

// ---------------------------------------------------------------------------
// Constructors

/// Correlated coherent state psi(x) with variance sigma_x and correlation
/// coefficient r. When `grid` is omitted the axis spans the mean +- 10 std.
inline GridWavefunction make_correlated_coherent(double sigma_x, double r, Complex alpha,
                                                 std::optional<GridAxis> grid = std::nullopt,
                                                 const PhysConfig& cfg = {}) {
  cfg.validate();
  if (!(sigma_x > 0.0)) throw Error(ErrorCode::validation, "sigma_x must be positive");
  if (!(std::abs(r) < 1.0)) throw Error(ErrorCode::validation, "|r| must be < 1");
  const double sq = std::sqrt(sigma_x);
  const GridAxis axis = grid.value_or(auto_axis(2.0 * sq * alpha.real(), sq));
  const Complex width = Complex(1.0, -r / std::sqrt(1.0 - r * r)) / (4.0 * sigma_x);
  const Complex shift = -0.5 * (alpha * alpha + std::norm(alpha));
  const double prefactor = std::pow(2.0 * std::numbers::pi * sigma_x, -0.25);
  ComplexVector amps(axis.count);
  for (Eigen::Index i = 0; i < axis.count; ++i) {
    const double x = axis.coord(i);
    amps[i] = prefactor * std::exp(-x * x * width + alpha * x / sq + shift);
  }
  return GridWavefunction::create({axis}, std::move(amps));
}

/// Equilibrium oscillator state (unit mass): sigma_xx = (hbar/2w) coth, sigma_pp = (hbar w/2) coth.
inline GaussianState make_thermal(double omega, double temperature, const PhysConfig& cfg = {}) {
  cfg.validate();
  if (!(omega > 0.0)) throw Error(ErrorCode::validation, "omega must be positive");
  if (!(temperature >= 0.0)) throw Error(ErrorCode::validation, "temperature must be >= 0");
  double coth = 1.0;
  if (temperature > 0.0) {
    coth = 1.0 / std::tanh(cfg.hbar * omega / (2.0 * cfg.kB * temperature));
  }
  RealMatrix cov = RealMatrix::Zero(2, 2);
  cov(0, 0) = cfg.hbar / (2.0 * omega) * coth;
  cov(1, 1) = cfg.hbar * omega / 2.0 * coth;
  return GaussianState::create(RealVector::Zero(2), cov, cfg.hbar);
}

/// Two-mode pure Gaussian psi(x,y) = N exp(-(a/2)x^2 - bxy - (c/2)y^2),
/// normalized numerically on the grid.
inline GridWavefunction make_entangled_gaussian(double a, double c, Complex b,
                                                std::optional<std::pair<GridAxis, GridAxis>> grid =
                                                    std::nullopt,
                                                const PhysConfig& cfg = {}) {
  cfg.validate();
  if (!(a > 0.0) || !(c > 0.0)) throw Error(ErrorCode::validation, "a and c must be positive");
  const double d = a * c - b.real() * b.real();
  if (!(d > 0.0)) {
    throw Error(ErrorCode::non_normalizable, "D = ac - Re(b)^2 must be positive");
  }
  const auto axes = grid.value_or(std::pair{auto_axis(0.0, std::sqrt(c / (2.0 * d))),
                                            auto_axis(0.0, std::sqrt(a / (2.0 * d)))});
  const GridAxis& ax = axes.first;
  const GridAxis& ay = axes.second;
  ComplexVector amps(ax.count * ay.count);
  for (Eigen::Index i = 0; i < ax.count; ++i) {
    const double x = ax.coord(i);
    for (Eigen::Index j = 0; j < ay.count; ++j) {
      const double y = ay.coord(j);
      amps[i * ay.count + j] = std::exp(-0.5 * a * x * x - b * x * y - 0.5 * c * y * y);
    }
  }
  double norm = 0.0;
  for (Eigen::Index i = 0; i < ax.count; ++i) {
    for (Eigen::Index j = 0; j < ay.count; ++j) {
      norm += ax.step * detail::trapezoid_weight(i, ax.count) * ay.step *
              detail::trapezoid_weight(j, ay.count) * std::norm(amps[i * ay.count + j]);
    }
  }
  amps /= std::sqrt(norm);
  return GridWavefunction::create({ax, ay}, std::move(amps));
}

/// Diagonal mixture sum_n p_n |n><n|. One empty guard level is appended (more
/// if min_dim asks for it).
inline FockMixedState make_fock_mixture(const std::vector<double>& probs,
                                        Eigen::Index min_dim = 0) {
  if (probs.empty()) throw Error(ErrorCode::validation, "probability vector is empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(ErrorCode::validation, "probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::validation, "probabilities must sum to 1 within 1e-12");
  }
  const Eigen::Index dim = std::max<Eigen::Index>(static_cast<Eigen::Index>(probs.size()) + 1,
                                                  min_dim);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t n = 0; n < probs.size(); ++n) {
    rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = probs[n];
  }
  return FockMixedState::create(std::move(rho));
}

/// Truncated, renormalized Glauber coherent state |alpha><alpha|.
inline FockMixedState make_fock_coherent(Complex alpha, Eigen::Index dim = 32) {
  if (dim < 2) throw Error(ErrorCode::validation, "dim must be >= 2");
  ComplexVector c(dim);
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 0; n < dim; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    c[n] = term;
  }
  c.normalize();
  return FockMixedState::create(c * c.adjoint());
}

/// Quadratures x = sqrt(hbar/2)(a + a^dag), p = i sqrt(hbar/2)(a^dag - a).
inline std::pair<Observable, Observable> quadrature_observables(Eigen::Index dim,
                                                                const PhysConfig& cfg = {}) {
  cfg.validate();
  if (dim < 2) throw Error(ErrorCode::validation, "quadrature observables need dim >= 2");
  ComplexMatrix lower = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  const double s = std::sqrt(cfg.hbar / 2.0);
  ComplexMatrix x = s * (lower + lower.adjoint());
  ComplexMatrix p = Complex(0.0, s) * (lower.adjoint() - lower);
  return {Observable::matrix("x", std::move(x)), Observable::matrix("p", std::move(p))};
}

// ---------------------------------------------------------------------------
// Seeded generators

namespace detail {

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

inline ComplexMatrix ginibre(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

/// Random rank-`rank` density matrix of size dim (Ginibre construction).
inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index dim, Eigen::Index rank) {
  const ComplexMatrix g = ginibre(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline ComplexMatrix random_hermitian_matrix(std::mt19937_64& rng, Eigen::Index dim,
                                             double scale) {
  const ComplexMatrix g = ginibre(rng, dim, dim);
  return scale * 0.5 * (g + g.adjoint());
}

/// Random symplectic matrix from local rotations/squeezings and neighbouring
/// beam splitters, ordering (q1, p1, q2, p2, ...).
inline RealMatrix random_symplectic(std::mt19937_64& rng, Eigen::Index n_modes) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-1.0, 1.0);
  auto local_layer = [&] {
    RealMatrix l = RealMatrix::Identity(2 * n_modes, 2 * n_modes);
    for (Eigen::Index k = 0; k < n_modes; ++k) {
      auto rot = [](double t) {
        Eigen::Matrix2d m;
        m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
        return m;
      };
      const double t1 = angle(rng);
      const double r = squeeze(rng);
      const double t2 = angle(rng);
      Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
      sq(0, 0) = std::exp(r);
      sq(1, 1) = std::exp(-r);
      l.block<2, 2>(2 * k, 2 * k) = rot(t1) * sq * rot(t2);
    }
    return l;
  };
  RealMatrix s = local_layer();
  for (Eigen::Index k = 0; k + 1 < n_modes; ++k) {
    const double t = angle(rng);
    RealMatrix bs = RealMatrix::Identity(2 * n_modes, 2 * n_modes);
    const Eigen::Index a = 2 * k;
    const Eigen::Index b = 2 * (k + 1);
    for (int q = 0; q < 2; ++q) {
      bs(a + q, a + q) = std::cos(t);
      bs(a + q, b + q) = std::sin(t);
      bs(b + q, a + q) = -std::sin(t);
      bs(b + q, b + q) = std::cos(t);
    }
    s = bs * s;
  }
  return local_layer() * s;
}

}  // namespace detail

/// Physical covariance (hbar/2) S diag(2 n_k + 1) S^T with n_k in [0, 2].
inline GaussianState random_gaussian_state(std::uint64_t seed, Eigen::Index n_modes,
                                           const PhysConfig& cfg = {}) {
  cfg.validate();
  if (n_modes < 1) throw Error(ErrorCode::validation, "n_modes must be >= 1");
  auto rng = detail::make_rng(seed, 0x6a09e667);
  std::uniform_real_distribution<double> occupation(0.0, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealVector nu(2 * n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    const double v = 2.0 * occupation(rng) + 1.0;
    nu[2 * k] = v;
    nu[2 * k + 1] = v;
  }
  const RealMatrix s = detail::random_symplectic(rng, n_modes);
  RealMatrix cov = cfg.hbar / 2.0 * s * nu.asDiagonal() * s.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  RealVector mean(2 * n_modes);
  for (Eigen::Index k = 0; k < mean.size(); ++k) mean[k] = normal(rng);
  return GaussianState::create(std::move(mean), std::move(cov), cfg.hbar);
}

/// Random full-rank mixed state on the lowest dim-1 levels with the top level
/// left empty (Truncation::enforce), or on all dim levels (Truncation::unchecked).
inline FockMixedState random_density_matrix(std::uint64_t seed, Eigen::Index dim,
                                            Truncation truncation = Truncation::enforce) {
  if (dim < 2) throw Error(ErrorCode::validation, "dim must be >= 2");
  auto rng = detail::make_rng(seed, 0xbb67ae85);
  if (truncation == Truncation::unchecked) {
    return FockMixedState::create(detail::random_density(rng, dim, dim), truncation);
  }
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  rho.topLeftCorner(dim - 1, dim - 1) = detail::random_density(rng, dim - 1, dim - 1);
  return FockMixedState::create(std::move(rho), truncation);
}

inline Observable random_hermitian(std::uint64_t seed, Eigen::Index dim, double scale = 1.0) {
  if (dim < 1) throw Error(ErrorCode::validation, "dim must be >= 1");
  auto rng = detail::make_rng(seed, 0x3c6ef372);
  return Observable::matrix("H" + std::to_string(seed),
                            detail::random_hermitian_matrix(rng, dim, scale));
}

// ---------------------------------------------------------------------------
// Label resolution

/// Resolves "x", "p" ("px"), "y", "py" (and "q1", "p1", "q2", "p2") against the
/// representation of `state`.
inline Observable observable_from_label(const std::string& label, const State& state,
                                        const PhysConfig& cfg = {}) {
  int mode = -1;
  Quadrature kind = Quadrature::position;
  if (label == "x" || label == "q1") {
    mode = 0;
  } else if (label == "p" || label == "px" || label == "p1") {
    mode = 0;
    kind = Quadrature::momentum;
  } else if (label == "y" || label == "q2") {
    mode = 1;
  } else if (label == "py" || label == "p2") {
    mode = 1;
    kind = Quadrature::momentum;
  } else {
    throw Error(ErrorCode::validation, "unknown observable label '" + label + "'");
  }
  return std::visit(
      [&](const auto& s) -> Observable {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianState>) {
          if (mode >= s.n_modes()) {
            throw Error(ErrorCode::incompatible, "label '" + label + "' needs a second mode");
          }
          RealVector coeffs = RealVector::Zero(2 * s.n_modes());
          coeffs[2 * mode + (kind == Quadrature::momentum ? 1 : 0)] = 1.0;
          return Observable::linear(label, std::move(coeffs));
        } else if constexpr (std::is_same_v<T, GridWavefunction>) {
          if (mode >= static_cast<int>(s.n_axes())) {
            throw Error(ErrorCode::incompatible, "label '" + label + "' needs a 2D grid");
          }
          return Observable::grid(label, kind, mode);
        } else {
          if (mode != 0) {
            throw Error(ErrorCode::incompatible, "Fock states carry a single mode (x, p)");
          }
          auto [x, p] = quadrature_observables(s.dim(), cfg);
          const Observable& q = kind == Quadrature::position ? x : p;
          return Observable::matrix(label, std::get<MatrixOp>(q.representation()).matrix);
        }
      },
      state);
}

}  // namespace urbounds
