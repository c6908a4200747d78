// Copyright 2026 The qlbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "qlbm/classical_lbm.hpp"
#include "qlbm/csv.hpp"
#include "qlbm/gauss_bench.hpp"
#include "qlbm/lbm_encodings.hpp"
#include "qlbm/qlsa.hpp"
#include "suites.hpp"

namespace qlbm {
namespace cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void write_manifest(const fs::path& dir, const std::string& command, const RunConfig& cfg,
                    const std::vector<std::string>& derived) {
  auto f = open_out(dir / "manifest.txt");
  f << "# qlbm run manifest\n";
  f << "version = " << kVersion << "\n";
  f << "command = " << command << "\n";
  f << "[config]\n";
  write_config_echo(f, cfg);
  f << "[derived]\n";
  for (const auto& line : derived) f << line << "\n";
}

std::string alpha_m_or_na(double omega) {
  return omega > 0.0 && omega < 1.0 ? csv::num(be::alpha_M(omega)) : std::string("n/a");
}

}  // namespace

int cmd_bench(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  std::vector<std::string> derived;
  bool ok = true;
  auto summary = open_out(dir / "summary.csv");
  bench::write_summary_header(summary);

  const auto vs = cfg.velocity_set();
  const auto grid = cfg.grid();
  const auto u = lattice::VelocityField::uniform({cfg.ux, cfg.uy});
  const auto mach = lattice::check_low_mach(u, grid, &vs);
  derived.push_back("low_mach_holds = " + std::string(mach.holds ? "true" : "false"));
  derived.push_back("low_mach_limit = " + csv::num(mach.limit));
  derived.push_back("low_mach_bound_assumed_1d = " +
                    std::string(mach.assumed_bound ? "true" : "false"));

  for (const auto& c : cfg.cases()) {
    const std::string key = c.id + "_" + bench::to_string(c.path);
    bench::BenchReport r;
    try {
      r = bench::run_case(c);
    } catch (const std::length_error& e) {
      log << "error: " << key << ": " << e.what() << "\n";
      return kExitCheckFailed;
    }
    auto f = open_out(dir / (key + ".csv"));
    bench::write_case_csv(f, r);
    bench::write_summary_rows(summary, r);

    const std::string tau = csv::num(c.tau_star);
    derived.push_back("tau_star[" + tau + "].D = " + csv::num(r.diffusion));
    derived.push_back("tau_star[" + tau + "].omega = " + csv::num(r.omega));
    derived.push_back("tau_star[" + tau + "].alpha_M = " + alpha_m_or_na(r.omega));
    derived.push_back("tau_star[" + tau + "].regime = " +
                      lbm::to_string(lbm::relaxation_regime(c.tau_star)));
    derived.push_back("tau_star[" + tau + "].encoding = " + r.encoding);

    if (c.path != bench::Path::classical && r.max_path_deviation() > cfg.tol) {
      log << "check failed: " << key << " deviates from classical LBM by "
          << csv::num(r.max_path_deviation()) << " > " << csv::num(cfg.tol) << "\n";
      ok = false;
    }
    if (r.max_mass_drift() > 1e-10) {
      log << "check failed: " << key << " mass drift " << csv::num(r.max_mass_drift()) << "\n";
      ok = false;
    }
    log << key << ": rel_l2_corrected = " << csv::num(r.max_rel_l2_corrected())
        << ", path deviation = " << csv::num(r.max_path_deviation()) << "\n";
  }
  write_manifest(dir, "bench", cfg, derived);
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& log) {
  static const std::vector<std::string> names{"marching", "norm", "be", "dilation", "usva",
                                              "qlsa"};
  const bool all = suite == "all";
  if (!all && std::find(names.begin(), names.end(), suite) == names.end())
    throw ConfigError("suite", "'" + suite + "' is not one of marching|norm|be|dilation|usva|qlsa|all");

  suites::SuiteResult res;
  auto want = [&](const char* s) { return all || suite == s; };
  if (want("marching")) {
    suites::RepresentationSuiteOptions o;
    o.seed = cfg.seed + 5;
    res.append(suites::representation_suite(o));
  }
  if (want("norm")) {
    suites::NormSuiteOptions o;
    o.model = cfg.model.empty() ? "d2q5" : cfg.model;
    o.omegas = cfg.norm_omegas;
    o.samples = cfg.norm_samples;
    o.max_grid = cfg.norm_max_grid;
    o.tol = cfg.tol;
    o.seed = cfg.seed;
    res.append(suites::norm_suite(o));
  }
  if (want("be")) {
    suites::BeSuiteOptions o;
    o.max_qubits = cfg.be_max_qubits;
    o.tau_star = cfg.verify_tau_star;
    o.seed = cfg.seed + 1;
    res.append(suites::be_suite(o));
  }
  if (want("dilation")) {
    suites::DilationSuiteOptions o;
    o.max_nodes = cfg.dilation_max_nodes;
    o.max_steps = cfg.dilation_max_steps;
    o.tau_star = cfg.verify_tau_star;
    o.seed = cfg.seed + 2;
    res.append(suites::dilation_suite(o));
  }
  if (want("usva")) {
    suites::UsvaSuiteOptions o;
    o.seed = cfg.seed + 3;
    res.append(suites::usva_suite(o));
  }
  if (want("qlsa")) {
    suites::QlsaSuiteOptions o;
    o.systems = cfg.qlsa_systems;
    o.max_steps = cfg.qlsa_max_steps;
    o.tol = cfg.tol;
    o.seed = cfg.seed + 4;
    res.append(suites::qlsa_suite(o));
  }

  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  auto f = open_out(dir / ("verify_" + suite + ".csv"));
  suites::write_rows_csv(f, res);
  write_manifest(dir, "verify " + suite, cfg,
                 {"checks = " + std::to_string(res.rows.size()),
                  "failures = " + std::to_string(res.failures())});

  std::size_t shown = 0;
  for (const auto& r : res.rows) {
    if (r.pass) continue;
    if (shown++ < 20)
      log << "FAIL " << r.suite << " " << r.check << " [" << r.params
          << "] value = " << csv::num(r.value) << ", bound = " << csv::num(r.bound) << "\n";
  }
  log << suite << ": " << res.rows.size() - res.failures() << "/" << res.rows.size()
      << " checks passed\n";
  return res.pass() ? kExitPass : kExitCheckFailed;
}

std::vector<ComplexityRow> complexity_sweep(const RunConfig& cfg) {
  double omega = 0.5;
  if (cfg.omega)
    omega = *cfg.omega;
  else if (!cfg.tau_star.empty())
    omega = cfg.omega_for(cfg.tau_star.front());
  std::vector<ComplexityRow> rows;
  for (std::size_t nt : cfg.nt_sweep) {
    for (double eps : cfg.eps_sweep) {
      ComplexityRow r;
      r.timemarch = dilation::complexity_report(nt, eps, cfg.norm_ratio, omega);
      r.qlsa = qlsa::qlsa_complexity(nt, eps, cfg.psi0_norm, cfg.norm_ratio, omega);
      r.ratio = r.timemarch.queries_per_oracle / r.qlsa.total_queries;
      rows.push_back(r);
    }
  }
  return rows;
}

void write_complexity_csv(std::ostream& out, const std::vector<ComplexityRow>& rows) {
  csv::Writer w(out);
  w.row({"N_t", "epsilon", "alpha_M", "delta", "epsilon_step", "amplification_floor",
         "amplification_bound", "inequality_holds", "timemarch_per_step", "timemarch_queries",
         "timemarch_total", "usva_queries_per_step", "qlsa_per_solve", "qlsa_queries", "ratio"});
  for (const auto& r : rows) {
    const auto& t = r.timemarch;
    w.cell(t.n_t);
    w.cell(t.epsilon);
    w.cell(t.alpha_M);
    w.cell(t.delta);
    w.cell(t.epsilon_step);
    w.cell(t.amplification_floor);
    w.cell(t.amplification_bound);
    w.cell(t.amplification_inequality_holds);
    w.cell(t.queries_per_step);
    w.cell(t.queries_per_oracle);
    w.cell(t.total_queries);
    w.cell(t.usva_queries_per_step);
    w.cell(r.qlsa.queries_per_step);
    w.cell(r.qlsa.total_queries);
    w.cell(r.ratio);
    w.end_row();
  }
}

int cmd_complexity(const RunConfig& cfg, std::ostream& log) {
  const auto rows = complexity_sweep(cfg);
  const std::size_t first_bad = dilation::check_amplification_inequality(2, 1000000);
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  auto f = open_out(dir / "complexity.csv");
  write_complexity_csv(f, rows);
  write_manifest(dir, "complexity", cfg,
                 {"amplification_inequality_2_to_1e6 = " +
                      std::string(first_bad == 0 ? "holds" : "fails at " + std::to_string(first_bad)),
                  "constants = all big-O constants set to 1",
                  "timemarch_queries = g*N_t*ln(N_t/eps) per step oracle",
                  "timemarch_total = g*N_t*N_t*ln(N_t/eps) over all step oracles",
                  "qlsa_queries = g*alpha_M*(N_t+1)*ln(N_t*|psi0|/eps)"});
  log << "complexity: " << rows.size() << " rows\n";
  if (first_bad != 0) {
    log << "check failed: (1-1/N)^N >= exp(-1/(1-1/N)) fails at N = " << first_bad << "\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}

}  // namespace cli
}  // namespace qlbm
