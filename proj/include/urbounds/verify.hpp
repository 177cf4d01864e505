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

// Randomized validity sweep. Each trial draws a random mixed state and three
// random Hermitian observables (generic regime), plus a bipartite instance
// z1 = A (x) I, z2 = B (x) I, z3 = I (x) C where z3 commutes with z1 and z2.
// Every bound must stay below the achieved product.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "urbounds/bounds.hpp"
#include "urbounds/detail/parallel.hpp"
#include "urbounds/moments.hpp"
#include "urbounds/state_space.hpp"

namespace urbounds {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int trials = 500;
  int dim_min = 2;
  int dim_max = 8;
  double rel_tol = 1e-9;    // bounds vs product
  double det_tol = 1e-10;   // det F vs (trace X)^3
  unsigned threads = 0;     // 0: detail::thread_count()
  bool keep_reports = false;  // fill VerifySummary::reports (generic regime)
};

struct InequalityTally {
  long checked = 0;
  long violations = 0;
  double max_violation = 0.0;  // largest relative excess of bound over product
};

struct VerifySummary {
  int trials = 0;
  std::map<std::string, InequalityTally> tallies;
  double min_det_f_relative = 0.0;  // min det F / (trace X)^3
  long coupled_vacuous = 0;
  long coupled_above_rs = 0;   // generic regime: coupled bound > G12
  long coupled_evaluated = 0;  // generic regime
  std::array<long, 10> tightness{};  // histogram of best_bound / product
  std::vector<std::pair<std::uint64_t, BoundReport>> reports;  // (trial seed, report)

  long total_violations() const {
    long v = 0;
    for (const auto& [name, t] : tallies) v += t.violations;
    return v;
  }
};

namespace detail {

struct Check {
  const char* name;
  double relative_excess;  // (bound - product) / product, or the analogous ratio
  bool ok;
};

struct TrialResult {
  std::vector<Check> checks;
  double det_f_relative = 0.0;
  bool vacuous = false;
  bool coupled_above_rs = false;
  bool coupled_evaluated = false;
  double tightness = 0.0;
  std::uint64_t trial_seed = 0;
  BoundReport report;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline void check_bound(std::vector<Check>& out, const char* name, double bound, double product,
                        double rel_tol) {
  const double excess = (bound - product) / product;
  out.push_back({name, excess, excess <= rel_tol});
}

inline TrialResult run_trial(const VerifyOptions& opt, int trial) {
  const std::uint64_t base = mix_seed(opt.seed, static_cast<std::uint64_t>(trial));
  const int span = opt.dim_max - opt.dim_min + 1;
  const Eigen::Index dim = opt.dim_min + static_cast<int>(base % static_cast<std::uint64_t>(span));
  TrialResult res;

  // Generic regime: random state, random Hermitian triple.
  {
    const FockMixedState rho = random_density_matrix(mix_seed(base, 1), dim, Truncation::unchecked);
    const std::vector<Observable> obs{random_hermitian(mix_seed(base, 2), dim),
                                      random_hermitian(mix_seed(base, 3), dim),
                                      random_hermitian(mix_seed(base, 4), dim)};
    const MomentPair mp = covariance_matrices(State(rho), std::span<const Observable>(obs));
    const double product = std::sqrt(mp.X(0, 0) * mp.X(1, 1));
    check_bound(res.checks, "robertson", robertson_bound(mp), product, opt.rel_tol);
    check_bound(res.checks, "rs", rs_bound(mp), product, opt.rel_tol);

    const double scale3 = mp.X(0, 0) * mp.X(1, 1) * mp.X(2, 2);
    const double residual = triple_det_residual(mp);
    res.checks.push_back({"det3", -residual / scale3, residual >= -opt.rel_tol * scale3});

    const double tr = mp.X.trace();
    const double det = gram_determinant(mp);
    res.det_f_relative = det / (tr * tr * tr);
    res.checks.push_back({"detF", -res.det_f_relative, det >= -opt.det_tol * tr * tr * tr});

    const CoupledBound cb = coupled_bound(mp);
    res.vacuous = cb.vacuous();
    if (cb.bound) {
      check_bound(res.checks, "coupled", *cb.bound, product, opt.rel_tol);
      res.coupled_evaluated = true;
      res.coupled_above_rs = *cb.bound > rs_bound(mp);
    }
    res.trial_seed = base;
    res.report = bound_report(mp);
    res.tightness = res.report.best_bound / product;
  }

  // Commuting regime on a dim x 2 bipartite space.
  {
    const Eigen::Index d2 = 2;
    const FockMixedState rho =
        random_density_matrix(mix_seed(base, 5), dim * d2, Truncation::unchecked);
    auto herm = [](std::uint64_t s, Eigen::Index d) {
      return std::get<MatrixOp>(random_hermitian(s, d).representation()).matrix;
    };
    const ComplexMatrix id1 = ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix id2 = ComplexMatrix::Identity(d2, d2);
    const std::vector<Observable> obs{
        Observable::matrix("A", kron(herm(mix_seed(base, 6), dim), id2)),
        Observable::matrix("B", kron(herm(mix_seed(base, 7), dim), id2)),
        Observable::matrix("C", kron(id1, herm(mix_seed(base, 8), d2)))};
    MomentPair mp = covariance_matrices(State(rho), std::span<const Observable>(obs));
    const double product = std::sqrt(mp.X(0, 0) * mp.X(1, 1));
    check_bound(res.checks, "rs", rs_bound(mp), product, opt.rel_tol);
    const CoupledBound cb = coupled_bound(mp);
    if (cb.bound) check_bound(res.checks, "coupled", *cb.bound, product, opt.rel_tol);
    if (third_commutes(mp)) {
      check_bound(res.checks, "commuting", coupled_bound_commuting(mp), product, opt.rel_tol);
    } else {
      // The Kronecker structure makes Y13 = Y23 = 0 up to rounding.
      res.checks.push_back({"commuting", 1.0, false});
    }
  }
  return res;
}

}  // namespace detail

inline VerifySummary run_verification(const VerifyOptions& opt) {
  if (opt.trials < 1) throw Error(ErrorCode::validation, "trials must be >= 1");
  if (opt.dim_min < 2 || opt.dim_max < opt.dim_min || opt.dim_max > 64) {
    throw Error(ErrorCode::validation, "dimensions must satisfy 2 <= dim_min <= dim_max <= 64");
  }
  std::vector<detail::TrialResult> results(static_cast<std::size_t>(opt.trials));
  detail::parallel_for(
      results.size(),
      [&](std::size_t i) { results[i] = detail::run_trial(opt, static_cast<int>(i)); },
      opt.threads == 0 ? detail::thread_count() : opt.threads);

  VerifySummary sum;
  sum.trials = opt.trials;
  sum.min_det_f_relative = results.front().det_f_relative;
  for (const auto& r : results) {
    for (const auto& c : r.checks) {
      auto& t = sum.tallies[c.name];
      ++t.checked;
      if (!c.ok) ++t.violations;
      t.max_violation = std::max(t.max_violation, c.relative_excess);
    }
    sum.min_det_f_relative = std::min(sum.min_det_f_relative, r.det_f_relative);
    if (r.vacuous) ++sum.coupled_vacuous;
    if (r.coupled_evaluated) ++sum.coupled_evaluated;
    if (r.coupled_above_rs) ++sum.coupled_above_rs;
    const int bin = std::clamp(static_cast<int>(r.tightness * 10.0), 0, 9);
    ++sum.tightness[static_cast<std::size_t>(bin)];
    if (opt.keep_reports) sum.reports.emplace_back(r.trial_seed, r.report);
  }
  return sum;
}

}  // namespace urbounds
