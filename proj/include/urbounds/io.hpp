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

// JSON state/observable ingestion and JSON/CSV emission. Numbers are written
// with 12 significant digits.
//
// State documents:
//   {"type":"gaussian","hbar":1.0,"mean":[..],"cov":[[..]]}
//   {"type":"fock_mixture","probs":[..]}
//   {"type":"grid_psi","axes":[{"origin":..,"step":..,"count":..}],"re":[..],"im":[..]}
//   {"type":"entangled_gaussian","a":..,"c":..,"b_re":..,"b_im":..}
// An optional "observables" array lists labels ("x","p","y","py") or inline
// Hermitian matrices {"label":..,"re":[[..]],"im":[[..]]}.

#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "urbounds/bounds.hpp"
#include "urbounds/entangled_example.hpp"
#include "urbounds/moments.hpp"
#include "urbounds/purity_frontier.hpp"
#include "urbounds/state_space.hpp"
#include "urbounds/verify.hpp"

namespace urbounds::io {

using nlohmann::json;

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Rounds to 12 significant digits so JSON dumps carry at most 12.
inline json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_number(v));
}

inline json number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

inline json to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

inline json to_json(const RealMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline json to_json(const MomentPair& mp) {
  return json{{"labels", mp.labels}, {"means", to_json(mp.means)}, {"X", to_json(mp.X)},
              {"Y", to_json(mp.Y)}};
}

inline json to_json(const BoundReport& r) {
  return json{{"labels", r.labels},
              {"product", number(r.product)},
              {"variance_product", number(r.variance_product)},
              {"heisenberg", number(r.heisenberg)},
              {"robertson", number(r.robertson)},
              {"rs", number(r.rs)},
              {"corr_coeff_r", number(r.corr_coeff_r)},
              {"corr_bound", number(r.corr_bound)},
              {"new_bound", r.new_bound_vacuous ? json("vacuous") : number(r.new_bound)},
              {"omega", number(r.omega)},
              {"gamma", number(r.gamma)},
              {"det3_residual", number(r.det3_residual)},
              {"commuting_bound", number(r.commuting_bound)},
              {"best_bound", number(r.best_bound)},
              {"best_source", r.best_source},
              {"slack", number(r.slack)}};
}

namespace detail {

inline std::vector<double> real_array(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::validation, std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::validation, std::string(what) + " must be numeric");
    out.push_back(v.get<double>());
  }
  return out;
}

inline RealMatrix real_matrix(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::validation, std::string(what) + " must be a non-empty 2D array");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto first = real_array(j[0], what);
  RealMatrix m(rows, static_cast<Eigen::Index>(first.size()));
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto row = real_array(j[static_cast<std::size_t>(i)], what);
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) {
      throw Error(ErrorCode::validation, std::string(what) + " rows differ in length");
    }
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

inline double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::validation, std::string("missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace detail

struct LoadedState {
  State state;
  PhysConfig cfg;
  json observables;  // raw "observables" entry, null when absent
};

/// Parses a state document. `cfg` supplies defaults; a "hbar" field overrides it.
inline LoadedState parse_state(const json& doc, PhysConfig cfg = {}) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw Error(ErrorCode::validation, "state document needs a string 'type'");
  }
  if (doc.contains("hbar")) cfg.hbar = detail::require_number(doc, "hbar");
  cfg.validate();
  const std::string type = doc["type"].get<std::string>();
  const json observables = doc.contains("observables") ? doc["observables"] : json(nullptr);

  if (type == "gaussian") {
    const auto mean = detail::real_array(doc.at("mean"), "mean");
    RealVector m = Eigen::Map<const RealVector>(mean.data(), static_cast<Eigen::Index>(mean.size()));
    return {GaussianState::create(m, detail::real_matrix(doc.at("cov"), "cov"), cfg.hbar), cfg,
            observables};
  }
  if (type == "fock_mixture") {
    return {make_fock_mixture(detail::real_array(doc.at("probs"), "probs")), cfg, observables};
  }
  if (type == "grid_psi") {
    std::vector<GridAxis> axes;
    for (const auto& ax : doc.at("axes")) {
      axes.push_back(GridAxis{detail::require_number(ax, "origin"),
                              detail::require_number(ax, "step"),
                              static_cast<Eigen::Index>(detail::require_number(ax, "count"))});
    }
    const auto re = detail::real_array(doc.at("re"), "re");
    const auto im = doc.contains("im") ? detail::real_array(doc["im"], "im")
                                       : std::vector<double>(re.size(), 0.0);
    if (re.size() != im.size()) throw Error(ErrorCode::validation, "re and im lengths differ");
    ComplexVector amps(static_cast<Eigen::Index>(re.size()));
    for (std::size_t k = 0; k < re.size(); ++k) {
      amps[static_cast<Eigen::Index>(k)] = Complex(re[k], im[k]);
    }
    return {GridWavefunction::create(std::move(axes), std::move(amps)), cfg, observables};
  }
  if (type == "entangled_gaussian") {
    const double a = detail::require_number(doc, "a");
    const double c = detail::require_number(doc, "c");
    const Complex b(detail::require_number(doc, "b_re"), detail::require_number(doc, "b_im"));
    const std::string repr = doc.value("representation", std::string("gaussian"));
    if (repr == "grid") return {make_entangled_gaussian(a, c, b, std::nullopt, cfg), cfg, observables};
    if (repr != "gaussian") {
      throw Error(ErrorCode::validation, "representation must be 'gaussian' or 'grid'");
    }
    return {entangled_gaussian_state(ExampleParams::create(a, c, b), cfg), cfg, observables};
  }
  throw Error(ErrorCode::validation, "unknown state type '" + type + "'");
}

/// A label string or an inline {"label", "re", "im"} Hermitian matrix.
inline Observable parse_observable(const json& j, const State& state, const PhysConfig& cfg) {
  if (j.is_string()) return observable_from_label(j.get<std::string>(), state, cfg);
  if (!j.is_object() || !j.contains("re")) {
    throw Error(ErrorCode::validation, "observable must be a label or {\"re\":..,\"im\":..}");
  }
  const RealMatrix re = detail::real_matrix(j["re"], "observable re");
  const RealMatrix im = j.contains("im") ? detail::real_matrix(j["im"], "observable im")
                                         : RealMatrix::Zero(re.rows(), re.cols());
  if (im.rows() != re.rows() || im.cols() != re.cols()) {
    throw Error(ErrorCode::validation, "observable re/im shapes differ");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return Observable::matrix(j.value("label", std::string("M")), std::move(m));
}

// ---------------------------------------------------------------------------
// CSV

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "re_b,im_b,valid,product,rs_bound,eq18_bound,residual,purity\n";
  for (const auto& r : rows) {
    os << format_number(r.re_b) << ',' << format_number(r.im_b) << ',' << (r.valid ? 1 : 0);
    if (r.valid) {
      os << ',' << format_number(r.product) << ',' << format_number(r.rs_bound) << ','
         << format_number(r.eq18_bound) << ',' << format_number(r.residual) << ','
         << format_number(r.purity) << '\n';
    } else {
      os << ",nonnormalizable,,,,\n";
    }
  }
}

inline void write_frontier_csv(std::ostream& os, const std::vector<FrontierPoint>& pts) {
  os << "mu,phi_exact,phi_tilde,phi_asym,support,abs_diff_lead,scaled_diff_lead\n";
  for (const auto& p : pts) {
    os << format_number(p.mu) << ',' << format_number(p.phi_exact) << ','
       << format_number(p.phi_tilde) << ',' << format_number(p.phi_asym) << ','
       << p.support_size << ',' << format_number(p.abs_diff_lead) << ','
       << format_number(p.scaled_diff_lead) << '\n';
  }
}

/// Sweep row: seed,product,robertson,rs,new,commuting,best,slack.
inline void write_sweep_csv_header(std::ostream& os) {
  os << "seed,product,robertson,rs,new,commuting,best,slack\n";
}

inline void write_sweep_csv_row(std::ostream& os, std::uint64_t seed, const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  os << seed << ',' << format_number(r.product) << ',' << format_number(r.robertson) << ','
     << format_number(r.rs) << ',' << (r.new_bound_vacuous ? std::string("vacuous") : opt(r.new_bound))
     << ',' << opt(r.commuting_bound) << ',' << format_number(r.best_bound) << ','
     << format_number(r.slack) << '\n';
}

inline json to_json(const VerifySummary& s) {
  json tallies = json::object();
  for (const auto& [name, t] : s.tallies) {
    tallies[name] = json{{"checked", t.checked},
                         {"violations", t.violations},
                         {"max_violation", number(t.max_violation)}};
  }
  return json{{"trials", s.trials},
              {"inequalities", tallies},
              {"total_violations", s.total_violations()},
              {"min_det_f_relative", number(s.min_det_f_relative)},
              {"coupled_vacuous", s.coupled_vacuous},
              {"coupled_evaluated", s.coupled_evaluated},
              {"coupled_above_rs", s.coupled_above_rs},
              {"tightness_histogram", s.tightness}};
}

}  // namespace urbounds::io
