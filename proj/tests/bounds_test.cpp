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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "urbounds/urbounds.hpp"

namespace urbounds {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no urbounds::Error thrown";
  return ErrorCode::validation;
}

// Moments of the half-half entangled example, written out by hand.
MomentPair example_moments() {
  RealMatrix x(3, 3);
  x << 2.0 / 3, 1.0 / 6, -1.0 / 3, 1.0 / 6, 2.0 / 3, -1.0 / 3, -1.0 / 3, -1.0 / 3, 2.0 / 3;
  RealMatrix y = RealMatrix::Zero(3, 3);
  y(0, 1) = 0.5;
  y(1, 0) = -0.5;
  return make_moment_pair(x, y, {"x", "p", "y"});
}

MomentPair random_triple(std::uint64_t seed, Eigen::Index dim) {
  const State rho = random_density_matrix(seed, dim, Truncation::unchecked);
  const std::vector<Observable> obs{random_hermitian(seed + 100, dim),
                                    random_hermitian(seed + 200, dim),
                                    random_hermitian(seed + 300, dim)};
  return covariance_matrices(rho, std::span<const Observable>(obs));
}

// Three observables on a dim x 2 space where the third acts on the second factor.
MomentPair random_commuting_triple(std::uint64_t seed, Eigen::Index dim) {
  const State rho = random_density_matrix(seed, 2 * dim, Truncation::unchecked);
  const auto herm = [](std::uint64_t s, Eigen::Index d) {
    return std::get<MatrixOp>(random_hermitian(s, d).representation()).matrix;
  };
  const ComplexMatrix a = herm(seed + 1, dim);
  const ComplexMatrix b = herm(seed + 2, dim);
  const ComplexMatrix c = herm(seed + 3, 2);
  ComplexMatrix za = ComplexMatrix::Zero(2 * dim, 2 * dim);
  ComplexMatrix zb = za;
  ComplexMatrix zc = za;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index k = 0; k < 2; ++k) {
        za(2 * i + k, 2 * j + k) = a(i, j);
        zb(2 * i + k, 2 * j + k) = b(i, j);
      }
    }
    for (Eigen::Index k = 0; k < 2; ++k) {
      for (Eigen::Index l = 0; l < 2; ++l) zc(2 * i + k, 2 * i + l) = c(k, l);
    }
  }
  const std::vector<Observable> obs{Observable::matrix("A", za), Observable::matrix("B", zb),
                                    Observable::matrix("C", zc)};
  return covariance_matrices(rho, std::span<const Observable>(obs));
}

double product(const MomentPair& mp) { return std::sqrt(mp.X(0, 0) * mp.X(1, 1)); }

TEST(PairBoundsTest, Examples) {
  const MomentPair coherent =
      covariance_matrices(GaussianState::create(RealVector::Zero(2), 0.5 * RealMatrix::Identity(2, 2)),
                          std::vector<std::string>{"x", "p"});
  EXPECT_DOUBLE_EQ(rs_bound(coherent), 0.5);
  EXPECT_DOUBLE_EQ(robertson_bound(coherent), 0.5);
  EXPECT_DOUBLE_EQ(product(coherent), rs_bound(coherent));

  const MomentPair ex = example_moments();
  EXPECT_NEAR(rs_bound(ex), 0.5270462766947299, 1e-15);
  EXPECT_DOUBLE_EQ(robertson_bound(ex), 0.5);

  const MomentPair zero = make_moment_pair(RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
  EXPECT_DOUBLE_EQ(rs_bound(zero), 0.0);
}

TEST(CorrelationFormTest, Examples) {
  const double r = 0.6;
  const MomentPair grid = covariance_matrices(make_correlated_coherent(0.5, r, 0.0),
                                              std::vector<std::string>{"x", "p"});
  const CorrelationForm cf = correlation_form(grid);
  EXPECT_NEAR(cf.r, r, 1e-10);
  EXPECT_NEAR(cf.bound, 0.390625, 1e-10);
  EXPECT_NEAR(grid.X(0, 0) * grid.X(1, 1), cf.bound, 1e-10);

  const MomentPair coherent =
      covariance_matrices(make_thermal(1.0, 0.0), std::vector<std::string>{"x", "p"});
  EXPECT_DOUBLE_EQ(correlation_form(coherent).r, 0.0);
  EXPECT_DOUBLE_EQ(correlation_form(coherent).bound, 0.25);

  const CorrelationForm ex = correlation_form(example_moments());
  EXPECT_NEAR(ex.r, 0.25, 1e-15);
  EXPECT_NEAR(ex.bound, 0.25 / (1 - 0.0625), 1e-15);
  EXPECT_LE(ex.bound, 4.0 / 9);

  RealMatrix x = RealMatrix::Zero(2, 2);
  x(1, 1) = 1.0;
  EXPECT_EQ(code_of([&] { correlation_form(make_moment_pair(x, RealMatrix::Zero(2, 2))); }),
            ErrorCode::degenerate_input);
}

TEST(TripleDetTest, Examples) {
  const MomentPair id = make_moment_pair(RealMatrix::Identity(3, 3), RealMatrix::Zero(3, 3));
  EXPECT_DOUBLE_EQ(triple_det_residual(id), 1.0);
  EXPECT_NEAR(triple_det_residual(example_moments()), 0.0, 1e-10);
  EXPECT_NEAR(gram_determinant(example_moments()), 0.0, 1e-10);

  const MomentPair rnd = random_triple(11, 6);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rnd.gram());
  EXPECT_GE(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_GE(triple_det_residual(rnd), 0.0);
  EXPECT_NEAR(triple_det_residual(rnd), es.eigenvalues().prod(),
              1e-10 * std::pow(rnd.X.trace(), 3));
}

TEST(TripleDetTest, MatchesDeterminantOnRandomTriples) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MomentPair mp = random_triple(seed, 2 + static_cast<Eigen::Index>(seed % 7));
    const double scale = mp.X(0, 0) * mp.X(1, 1) * mp.X(2, 2);
    EXPECT_NEAR(triple_det_residual(mp), gram_determinant(mp), 1e-10 * scale) << seed;
  }
}

TEST(CoupledBoundTest, DecoupledThirdReducesToRs) {
  RealMatrix x(3, 3);
  x << 1.3, 0.4, 0.0, 0.4, 0.9, 0.0, 0.0, 0.0, 2.0;
  RealMatrix y = RealMatrix::Zero(3, 3);
  y(0, 1) = 0.6;
  y(1, 0) = -0.6;
  const MomentPair mp = make_moment_pair(x, y);
  const CoupledBound cb = coupled_bound(mp);
  ASSERT_TRUE(cb.bound.has_value());
  EXPECT_DOUBLE_EQ(cb.omega, 0.0);
  EXPECT_DOUBLE_EQ(cb.gamma, 0.0);
  EXPECT_DOUBLE_EQ(*cb.bound, rs_bound(mp));
}

TEST(CoupledBoundTest, EntangledExample) {
  const MomentPair mp = example_moments();
  const CoupledBound cb = coupled_bound(mp);
  EXPECT_NEAR(cb.omega, 1.0 / 6, 1e-15);
  EXPECT_NEAR(cb.gamma, -1.0 / 36, 1e-15);
  EXPECT_NEAR(cb.radicand, 10.0 / 36 + 1.0 / 36 - 2.0 / 36, 1e-15);
  ASSERT_TRUE(cb.bound.has_value());
  EXPECT_NEAR(*cb.bound, 2.0 / 3, 1e-12);
  EXPECT_NEAR(*cb.bound, testing::quadratic_root_bound(mp), 1e-12);
  EXPECT_FALSE(cb.vacuous());
}

TEST(CoupledBoundTest, RandomTriplesValidAndMatchQuadraticRoot) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MomentPair mp = random_triple(seed * 7 + 1, 8);
    const CoupledBound cb = coupled_bound(mp);
    ASSERT_TRUE(cb.bound.has_value()) << seed;
    EXPECT_LE(*cb.bound, product(mp) * (1 + 1e-9)) << seed;
    EXPECT_NEAR(*cb.bound, testing::quadratic_root_bound(mp), 1e-12 * *cb.bound) << seed;
    EXPECT_GE(cb.radicand, 0.0) << seed;
  }
}

TEST(CoupledBoundTest, Errors) {
  RealMatrix x = RealMatrix::Identity(3, 3);
  x(2, 2) = 0.0;
  EXPECT_EQ(code_of([&] { coupled_bound(make_moment_pair(x, RealMatrix::Zero(3, 3))); }),
            ErrorCode::deterministic_third);
  EXPECT_EQ(code_of([] {
              coupled_bound(make_moment_pair(RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2)));
            }),
            ErrorCode::validation);
}

TEST(CoupledBoundTest, RadicandIsSchurComplementModulus) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    RealMatrix x(3, 3);
    RealMatrix y = RealMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      x(i, i) = 0.1 + std::abs(u(rng));
      for (int j = i + 1; j < 3; ++j) {
        x(i, j) = x(j, i) = u(rng);
        y(i, j) = u(rng);
        y(j, i) = -y(i, j);
      }
    }
    const MomentPair mp = make_moment_pair(x, y);
    const ComplexMatrix f = mp.gram();
    const double schur = std::norm(f(0, 1) - f(0, 2) * f(2, 1) / x(2, 2));
    const CoupledBound cb = coupled_bound(mp);
    EXPECT_NEAR(cb.radicand, schur, 1e-12 * (1 + schur)) << trial;
    EXPECT_FALSE(cb.vacuous());
  }
}

TEST(CoupledBoundTest, Homogeneity) {
  const double lambda = 2.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MomentPair mp = random_triple(seed + 500, 5);
    RealMatrix s = RealMatrix::Identity(3, 3);
    s(0, 0) = lambda;
    const MomentPair scaled = make_moment_pair(s * mp.X * s, s * mp.Y * s);
    const CoupledBound a = coupled_bound(mp);
    const CoupledBound b = coupled_bound(scaled);
    EXPECT_NEAR(product(scaled), lambda * product(mp), 1e-12 * product(scaled));
    EXPECT_NEAR(rs_bound(scaled), lambda * rs_bound(mp), 1e-12 * rs_bound(scaled));
    EXPECT_NEAR(b.omega, lambda * a.omega, 1e-12 * (b.omega + 1e-300));
    EXPECT_NEAR(*b.bound, lambda * *a.bound, 1e-12 * *b.bound);
    EXPECT_NEAR(bound_report(scaled).slack, lambda * bound_report(mp).slack,
                1e-10 * product(scaled));
  }
}

TEST(CommutingBoundTest, Examples) {
  const MomentPair ex = example_moments();
  EXPECT_TRUE(third_commutes(ex));
  EXPECT_NEAR(ex.X(0, 1), ex.X(0, 2) * ex.X(1, 2) / ex.X(2, 2), 1e-15);
  EXPECT_NEAR(coupled_bound_commuting(ex), 2.0 / 3, 1e-15);
  EXPECT_NEAR(coupled_bound_commuting(ex), product(ex), 1e-15);
  EXPECT_NEAR(*coupled_bound(ex).bound, coupled_bound_commuting(ex), 1e-15);

  RealMatrix x(3, 3);
  x << 1.0, 0.2, 0.0, 0.2, 1.5, 0.7, 0.0, 0.7, 1.0;
  RealMatrix y = RealMatrix::Zero(3, 3);
  y(0, 1) = 0.4;
  y(1, 0) = -0.4;
  const MomentPair x13zero = make_moment_pair(x, y);
  EXPECT_DOUBLE_EQ(coupled_bound_commuting(x13zero), rs_bound(x13zero));

  // Real coupling b = 0.5 with a = c = 1.
  RealMatrix xr(3, 3);
  xr << 2.0 / 3, 0.0, -1.0 / 3, 0.0, 0.5, 0.0, -1.0 / 3, 0.0, 2.0 / 3;
  const MomentPair real_b = make_moment_pair(xr, ex.Y);
  EXPECT_NEAR(coupled_bound_commuting(real_b), 0.5, 1e-15);
  EXPECT_NEAR(product(real_b), std::sqrt(1.0 / 3), 1e-15);

  RealMatrix yn = ex.Y;
  yn(0, 2) = 0.1;
  yn(2, 0) = -0.1;
  const MomentPair noncommuting = make_moment_pair(ex.X, yn);
  EXPECT_FALSE(third_commutes(noncommuting));
  EXPECT_EQ(code_of([&] { coupled_bound_commuting(noncommuting); }), ErrorCode::wrong_regime);
}

TEST(CommutingBoundTest, OrderingOnRandomCommutingTriples) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MomentPair mp = random_commuting_triple(seed * 13 + 5, 2 + static_cast<Eigen::Index>(seed % 5));
    ASSERT_TRUE(third_commutes(mp)) << seed;
    const double scale = product(mp);
    const double commuting = coupled_bound_commuting(mp);
    EXPECT_GE(commuting, rs_bound(mp) - 1e-12 * scale) << seed;
    EXPECT_GE(rs_bound(mp), robertson_bound(mp) - 1e-12 * scale) << seed;
    EXPECT_GE(robertson_bound(mp), 0.0);
    EXPECT_LE(commuting, scale * (1 + 1e-9)) << seed;
    EXPECT_NEAR(*coupled_bound(mp).bound, commuting, 1e-10 * scale) << seed;
  }
}

TEST(BoundReportTest, CoherentWithIndependentThird) {
  const State vacuum = GaussianState::create(RealVector::Zero(4), 0.5 * RealMatrix::Identity(4, 4));
  const std::vector<Observable> obs{observable_from_label("x", vacuum),
                                    observable_from_label("p", vacuum),
                                    observable_from_label("y", vacuum)};
  const BoundReport rep = bound_report(vacuum, std::span<const Observable>(obs));
  EXPECT_DOUBLE_EQ(rep.best_bound, 0.5);
  EXPECT_DOUBLE_EQ(rep.slack, 0.0);
  EXPECT_TRUE(rep.consistent());
  EXPECT_TRUE(rep.commuting_bound.has_value());
}

TEST(BoundReportTest, EntangledExample) {
  const BoundReport rep = bound_report(example_moments());
  EXPECT_NEAR(rep.product, 2.0 / 3, 1e-15);
  EXPECT_NEAR(rep.best_bound, 2.0 / 3, 1e-12);
  EXPECT_TRUE(rep.best_source == "commuting" || rep.best_source == "coupled");
  EXPECT_NEAR(rep.rs, 0.5270462766947299, 1e-15);
  EXPECT_LT(rep.rs, rep.best_bound);
  EXPECT_NEAR(rep.slack, 0.0, 1e-12);
  EXPECT_NEAR(rep.variance_product, 4.0 / 9, 1e-15);
  EXPECT_NEAR(rep.corr_coeff_r, 0.25, 1e-15);
  ASSERT_TRUE(rep.det3_residual.has_value());
  EXPECT_NEAR(*rep.det3_residual, 0.0, 1e-12);
}

TEST(BoundReportTest, ThermalPairWithUncoupledThird) {
  PhysConfig cfg;
  const GaussianState th = make_thermal(1.0, 1.0, cfg);
  RealMatrix cov = RealMatrix::Identity(4, 4) * 0.5;
  cov.topLeftCorner(2, 2) = th.cov();
  const State two = GaussianState::create(RealVector::Zero(4), cov);
  const MomentPair mp = covariance_matrices(two, std::vector<std::string>{"x", "p", "y"});
  const BoundReport rep = bound_report(mp, cfg);
  EXPECT_DOUBLE_EQ(rep.best_bound, 0.5);
  EXPECT_NEAR(rep.product, std::sqrt(1.1706735942077924), 1e-12);
  EXPECT_GT(rep.slack, 0.5);
  EXPECT_DOUBLE_EQ(rep.heisenberg, 0.5);
}

TEST(BoundReportTest, RandomInstancesAreConsistent) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BoundReport rep = bound_report(random_triple(seed + 900, 4));
    EXPECT_TRUE(rep.consistent()) << seed;
    EXPECT_GE(rep.best_bound, rep.rs);
    EXPECT_GE(rep.best_bound, rep.robertson);
    if (rep.new_bound) {
      EXPECT_GE(rep.best_bound, *rep.new_bound);
    }
  }
}

TEST(PurityBoundTest, Values) {
  EXPECT_EQ(phi_tilde(1.0), 1.0);
  EXPECT_NEAR(phi_tilde(0.25), 3.5865356217888564, 1e-14);
  EXPECT_NEAR(phi_asymptotic(0.25), 3.5868055555555554, 1e-14);
  EXPECT_NEAR(phi_tilde(0.70711), 1.3399922208118802, 1e-14);
  PhysConfig cfg;
  cfg.hbar = 2.0;
  EXPECT_DOUBLE_EQ(purity_bound(1.0, cfg), 1.0);
  EXPECT_EQ(code_of([] { phi_tilde(0.0); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { phi_tilde(1.5); }), ErrorCode::domain);
  EXPECT_EQ(code_of([] { phi_asymptotic(-0.1); }), ErrorCode::domain);
}

TEST(PurityBoundTest, GaussianChain) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GaussianState s = random_gaussian_state(seed + 40, 1);
    const double mu = purity(s);
    const double det = std::sqrt(s.cov().determinant());
    EXPECT_NEAR(det, 0.5 / mu, 1e-10 * det);
    EXPECT_GE(det, 0.5 * phi_tilde(mu) - 1e-9) << seed;
  }
}

}  // namespace
}  // namespace urbounds
