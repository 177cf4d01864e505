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

// urbounds command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 a physical inequality was violated.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "urbounds/io.hpp"
#include "urbounds/urbounds.hpp"

namespace {

using urbounds::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

struct RunConfig {
  std::string output;
  std::string format;
  double hbar = 1.0;
  double kB = 1.0;
  std::uint64_t seed = 0;
  int trials = 500;
  int dim = 0;  // 0: sweep dims 2..8
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw urbounds::Error(urbounds::ErrorCode::validation, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw urbounds::Error(urbounds::ErrorCode::validation, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw urbounds::Error(urbounds::ErrorCode::validation,
                          "malformed JSON in " + path + ": " + e.what());
  }
}

std::vector<std::string> split_labels(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_report(const RunConfig& rc, const std::string& state_path, const std::string& obs_flag) {
  urbounds::PhysConfig cfg{rc.hbar, rc.kB};
  const auto loaded = urbounds::io::parse_state(read_json_file(state_path), cfg);

  std::vector<urbounds::Observable> obs;
  if (!obs_flag.empty()) {
    for (const auto& l : split_labels(obs_flag)) {
      obs.push_back(urbounds::observable_from_label(l, loaded.state, loaded.cfg));
    }
  } else if (loaded.observables.is_array()) {
    for (const auto& j : loaded.observables) {
      obs.push_back(urbounds::io::parse_observable(j, loaded.state, loaded.cfg));
    }
  } else {
    for (const char* l : {"x", "p"}) {
      obs.push_back(urbounds::observable_from_label(l, loaded.state, loaded.cfg));
    }
  }

  const urbounds::MomentPair mp =
      urbounds::covariance_matrices(loaded.state, std::span<const urbounds::Observable>(obs),
                                    loaded.cfg);
  const urbounds::BoundReport rep = urbounds::bound_report(mp, loaded.cfg);
  Output out(rc.output);
  if (rc.format == "csv") {
    urbounds::io::write_sweep_csv_header(out.stream());
    urbounds::io::write_sweep_csv_row(out.stream(), rc.seed, rep);
  } else {
    json doc = urbounds::io::to_json(rep);
    doc["moments"] = urbounds::io::to_json(mp);
    doc["purity"] = urbounds::io::number(urbounds::purity(loaded.state));
    doc["psd"] = json{{"passed", urbounds::gram_psd_check(mp).passed},
                      {"min_eigenvalue",
                       urbounds::io::number(urbounds::gram_psd_check(mp).min_eigenvalue)}};
    out.stream() << doc.dump(2) << '\n';
  }
  if (!rep.consistent()) {
    std::cerr << "bound violated: slack " << urbounds::io::format_number(rep.slack) << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_example(const RunConfig& rc, double a, double c, double b_re, double b_im) {
  const urbounds::PhysConfig cfg{rc.hbar, rc.kB};
  const auto params = urbounds::ExampleParams::create(a, c, {b_re, b_im});
  const auto rows = urbounds::saturation_scan(a, c, {b_re}, {b_im}, cfg);
  Output out(rc.output);
  if (rc.format == "json") {
    const urbounds::MomentPair mp = urbounds::analytic_covariances(params, cfg);
    json doc = urbounds::io::to_json(urbounds::bound_report(mp, cfg));
    doc["moments"] = urbounds::io::to_json(mp);
    doc["purity"] = urbounds::io::number(urbounds::example_purity(params));
    doc["residual"] = urbounds::io::number(urbounds::saturation_residual(params, cfg));
    out.stream() << doc.dump(2) << '\n';
  } else {
    urbounds::io::write_scan_csv(out.stream(), rows);
  }
  return rows.front().residual < -1e-12 ? kExitViolation : kExitOk;
}

struct ScanFlags {
  double a = 1.0, c = 1.0;
  double re_min = -0.9, re_max = 0.9, re_step = 0.05;
  double im_min = -0.9, im_max = 0.9, im_step = 0.05;
};

int cmd_scan(const RunConfig& rc, const ScanFlags& f) {
  const urbounds::PhysConfig cfg{rc.hbar, rc.kB};
  const auto rows = urbounds::saturation_scan(
      f.a, f.c, urbounds::uniform_grid(f.re_min, f.re_max, f.re_step),
      urbounds::uniform_grid(f.im_min, f.im_max, f.im_step), cfg);
  Output out(rc.output);
  if (rc.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"re_b", urbounds::io::number(r.re_b)},
                         {"im_b", urbounds::io::number(r.im_b)},
                         {"valid", r.valid},
                         {"product", urbounds::io::number(r.product)},
                         {"rs_bound", urbounds::io::number(r.rs_bound)},
                         {"eq18_bound", urbounds::io::number(r.eq18_bound)},
                         {"residual", urbounds::io::number(r.residual)},
                         {"purity", urbounds::io::number(r.purity)}});
    }
    out.stream() << arr.dump(2) << '\n';
  } else {
    urbounds::io::write_scan_csv(out.stream(), rows);
  }
  for (const auto& r : rows) {
    if (r.valid && (r.residual < -1e-12 || r.eq18_bound > r.product * (1.0 + 1e-9))) {
      return kExitViolation;
    }
  }
  return kExitOk;
}

int cmd_frontier(const RunConfig& rc, double mu_min, double mu_max, int steps, int max_levels) {
  const auto table = urbounds::frontier_table(mu_min, mu_max, steps, max_levels);
  Output out(rc.output);
  if (rc.format == "json") {
    json arr = json::array();
    for (const auto& p : table) {
      json probs = json::array();
      for (double v : p.probs) probs.push_back(urbounds::io::number(v));
      arr.push_back(json{{"mu", urbounds::io::number(p.mu)},
                         {"phi_exact", urbounds::io::number(p.phi_exact)},
                         {"phi_tilde", urbounds::io::number(p.phi_tilde)},
                         {"phi_asym", urbounds::io::number(p.phi_asym)},
                         {"support", p.support_size},
                         {"probs", probs},
                         {"abs_diff_lead", urbounds::io::number(p.abs_diff_lead)},
                         {"scaled_diff_lead", urbounds::io::number(p.scaled_diff_lead)}});
    }
    out.stream() << arr.dump(2) << '\n';
  } else {
    urbounds::io::write_frontier_csv(out.stream(), table);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& rc) {
  urbounds::VerifyOptions opt;
  opt.seed = rc.seed;
  opt.trials = rc.trials;
  if (rc.dim != 0) {
    opt.dim_min = rc.dim;
    opt.dim_max = rc.dim;
  }
  opt.keep_reports = rc.format == "csv";
  const urbounds::VerifySummary sum = urbounds::run_verification(opt);
  Output out(rc.output);
  if (rc.format == "csv") {
    urbounds::io::write_sweep_csv_header(out.stream());
    for (const auto& [seed, rep] : sum.reports) {
      urbounds::io::write_sweep_csv_row(out.stream(), seed, rep);
    }
  } else {
    out.stream() << urbounds::io::to_json(sum).dump(2) << '\n';
  }
  return sum.total_violations() == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty-relation bounds for observables coupled to a third one"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--hbar", rc.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber);
  app.add_option("--kb", rc.kB, "Boltzmann constant")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", rc.output, "Write output to this file instead of stdout");

  auto* report = app.add_subcommand("report", "Bound report for a JSON state");
  std::string state_path;
  std::string obs_flag;
  report->add_option("--state", state_path, "State JSON file")->required()->check(CLI::ExistingFile);
  report->add_option("--obs", obs_flag, "Comma-separated observable labels, e.g. x,p,y");
  report->add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--seed", rc.seed, "Seed column for CSV output");

  auto* example = app.add_subcommand("example", "Closed-form two-mode Gaussian example");
  double ea = 1.0, ec = 1.0, ebr = 0.5, ebi = 0.5;
  example->add_option("--a", ea, "Coefficient a > 0");
  example->add_option("--c", ec, "Coefficient c > 0");
  example->add_option("--b-re", ebr, "Re(b)");
  example->add_option("--b-im", ebi, "Im(b)");
  example->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

  auto* scan = app.add_subcommand("scan-example", "Saturation scan over complex b");
  ScanFlags sf;
  scan->add_option("--a", sf.a, "Coefficient a > 0");
  scan->add_option("--c", sf.c, "Coefficient c > 0");
  scan->add_option("--re-min", sf.re_min);
  scan->add_option("--re-max", sf.re_max);
  scan->add_option("--re-step", sf.re_step);
  scan->add_option("--im-min", sf.im_min);
  scan->add_option("--im-max", sf.im_max);
  scan->add_option("--im-step", sf.im_step);
  scan->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

  auto* frontier = app.add_subcommand("frontier", "Purity-bounded frontier table");
  double mu_min = 0.05, mu_max = 1.0;
  int steps = 20;
  int max_levels = 256;
  frontier->add_option("--mu-min", mu_min, "Smallest purity");
  frontier->add_option("--mu-max", mu_max, "Largest purity");
  frontier->add_option("--steps", steps, "Number of purities")->check(CLI::PositiveNumber);
  frontier->add_option("--max-levels", max_levels, "Largest Fock support")
      ->check(CLI::PositiveNumber);
  frontier->add_option("--format", rc.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "Randomized validity sweep");
  verify->add_option("--seed", rc.seed, "Base seed");
  verify->add_option("--trials", rc.trials, "Number of random instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--dim", rc.dim, "Hilbert dimension (default: sweep 2..8)")
      ->check(CLI::Range(2, 64));
  verify->add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*report) return cmd_report(rc, state_path, obs_flag);
    if (*example) {
      if (rc.format.empty()) rc.format = "csv";
      return cmd_example(rc, ea, ec, ebr, ebi);
    }
    if (*scan) return cmd_scan(rc, sf);
    if (*frontier) return cmd_frontier(rc, mu_min, mu_max, steps, max_levels);
    if (*verify) return cmd_verify(rc);
  } catch (const urbounds::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
