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

// Exact purity-bounded frontier Phi(mu) over diagonal Fock mixtures.
//
// For a diagonal mixture sum_n p_n |n><n| the quadrature moments give
// sqrt(sigma_xx sigma_pp - sigma_xp^2) = hbar (<n> + 1/2), so the frontier is
// 2 min<n> + 1 where the minimum runs over probability vectors with
// sum p_n^2 = mu. Stationarity of the Lagrangian makes the minimizer a
// decreasing linear profile p_n = alpha - beta n on a support {0, ..., N-1};
// for each N the two constraints fix alpha and beta in closed form:
//
//   beta^2 = (mu - 1/N) / (N (N^2 - 1) / 12),   alpha = (1 + beta N (N-1)/2) / N,
//   <n>    = (N - 1)/2 - beta N (N^2 - 1) / 12.
//
// The support is feasible when mu >= 1/N and p_{N-1} >= 0; the smallest <n>
// over feasible N wins.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "urbounds/bounds.hpp"
#include "urbounds/core.hpp"

namespace urbounds {

struct MinOccupation {
  double n_min = 0.0;
  std::vector<double> probs;
};

inline MinOccupation min_mean_occupation(double mu, int max_levels = 256) {
  detail::check_purity_domain(mu);
  if (max_levels < 1) throw Error(ErrorCode::domain, "max_levels must be >= 1");
  if (mu < 1.0 / max_levels) {
    throw Error(ErrorCode::truncation, "purity below 1/max_levels needs a larger support");
  }
  MinOccupation best;
  best.n_min = std::numeric_limits<double>::infinity();
  if (mu == 1.0) {
    best.n_min = 0.0;
    best.probs = {1.0};
    return best;
  }
  for (int n_support = 2; n_support <= max_levels; ++n_support) {
    const double n = n_support;
    if (mu < 1.0 / n) continue;
    const double spread = n * (n * n - 1.0) / 12.0;
    const double beta = std::sqrt((mu - 1.0 / n) / spread);
    const double alpha = (1.0 + beta * n * (n - 1.0) / 2.0) / n;
    if (alpha - beta * (n - 1.0) < -1e-15) continue;
    const double mean_n = (n - 1.0) / 2.0 - beta * spread;
    if (mean_n < best.n_min) {
      best.n_min = mean_n;
      best.probs.assign(static_cast<std::size_t>(n_support), 0.0);
      for (int k = 0; k < n_support; ++k) {
        best.probs[static_cast<std::size_t>(k)] = std::max(alpha - beta * k, 0.0);
      }
    }
  }
  return best;
}

/// 2 min<n> + 1; Phi(1) = 1 and 1 <= Phi(mu) <= 1/mu.
inline double phi_exact(double mu, int max_levels = 256) {
  return 2.0 * min_mean_occupation(mu, max_levels).n_min + 1.0;
}

struct FrontierPoint {
  double mu = 0.0;
  double phi_exact = 0.0;
  double phi_tilde = 0.0;
  double phi_asym = 0.0;
  int support_size = 0;
  std::vector<double> probs;
  double abs_diff_lead = 0.0;     // |Phi - 8/(9 mu)|
  double scaled_diff_lead = 0.0;  // mu |Phi - 8/(9 mu)|
};

inline FrontierPoint frontier_point(double mu, int max_levels = 256) {
  const MinOccupation occ = min_mean_occupation(mu, max_levels);
  FrontierPoint pt;
  pt.mu = mu;
  pt.phi_exact = 2.0 * occ.n_min + 1.0;
  pt.phi_tilde = phi_tilde(mu);
  pt.phi_asym = phi_asymptotic(mu);
  pt.support_size = static_cast<int>(occ.probs.size());
  pt.probs = occ.probs;
  pt.abs_diff_lead = std::abs(pt.phi_exact - 8.0 / (9.0 * mu));
  pt.scaled_diff_lead = mu * pt.abs_diff_lead;
  return pt;
}

/// `steps` evenly spaced purities from mu_min to mu_max (mu_min alone when steps == 1).
inline std::vector<FrontierPoint> frontier_table(double mu_min, double mu_max, int steps,
                                                 int max_levels = 256) {
  if (!(mu_min > 0.0) || !(mu_min <= mu_max) || !(mu_max <= 1.0)) {
    throw Error(ErrorCode::domain, "need 0 < mu_min <= mu_max <= 1");
  }
  if (steps < 1) throw Error(ErrorCode::domain, "steps must be >= 1");
  std::vector<FrontierPoint> table;
  table.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double mu =
        steps == 1 ? mu_min : mu_min + (mu_max - mu_min) * k / static_cast<double>(steps - 1);
    table.push_back(frontier_point(k == steps - 1 && steps > 1 ? mu_max : mu, max_levels));
  }
  return table;
}

}  // namespace urbounds
