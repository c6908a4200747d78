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

#include "qlbm/gauss_bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qlbm/classical_lbm.hpp"
#include "qlbm/csv.hpp"
#include "qlbm/dilation.hpp"
#include "qlbm/lbm_encodings.hpp"
#include "qlbm/marching.hpp"
#include "qlbm/qlsa.hpp"

namespace qlbm {
namespace bench {

namespace {

// Largest padded system the dense-completion encoding may use.
constexpr std::size_t kDenseEncodingLimit = 1024;

double nearest_image(double d, double period) { return d - period * std::round(d / period); }

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::vector<double> phi_of(const CVector& psi, std::size_t q, std::size_t n, double omega) {
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j)
    p[j] = psi[static_cast<Eigen::Index>(q * n + j)].real() / (1.0 - omega);
  return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

}  // namespace

std::string to_string(Path p) {
  switch (p) {
    case Path::classical: return "classical";
    case Path::marching: return "marching";
    case Path::dilated: return "dilated";
    case Path::qlsa: return "qlsa";
  }
  return "unknown";
}

Path parse_path(const std::string& s) {
  if (s == "classical") return Path::classical;
  if (s == "marching") return Path::marching;
  if (s == "dilated") return Path::dilated;
  if (s == "qlsa") return Path::qlsa;
  throw std::invalid_argument("path: '" + s + "' is not one of classical|marching|dilated|qlsa");
}

double default_omega(double tau_star) { return tau_star > 1.0 ? 1.0 - 1.0 / tau_star : 0.5; }

int GaussCase::dimension() const { return lattice::velocity_set(model).d; }

double GaussCase::resolved_omega() const {
  return omega == 0.0 ? default_omega(tau_star) : omega;
}

void GaussCase::validate() const {
  const auto vs = lattice::velocity_set(model);
  if (vs.d == 1 && grid.ny != 1)
    throw std::invalid_argument("model " + model + " needs ny = 1, got " + std::to_string(grid.ny));
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma0 must be positive");
  if (!(tau_star > 0.5)) throw std::invalid_argument("tau_star must exceed 1/2");
  const double w = resolved_omega();
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("omega must lie in (0, 1)");
  if (steps.empty()) throw std::invalid_argument("steps must list at least one step count");
}

std::vector<double> gauss_init(const GaussCase& c) {
  return gauss_analytic(c, 0.0, AnalyticMode::corrected);
}

std::vector<double> gauss_analytic(const GaussCase& c, double t, AnalyticMode mode) {
  if (t < 0.0) throw std::invalid_argument("gauss_analytic: t must be non-negative");
  const int d = c.dimension();
  const double D = t > 0.0 ? lattice::diffusion_coefficient(c.tau_star, c.grid) : 0.0;
  const double s2 = c.sigma0 * c.sigma0 + 2.0 * D * t;
  const double ratio = c.sigma0 * c.sigma0 / s2;
  const double amp = mode == AnalyticMode::paper ? ratio : std::pow(ratio, 0.5 * d);
  const auto& g = c.grid;
  std::vector<double> out(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const double dx = nearest_image(static_cast<double>(g.ix(j)) - c.x0 - c.u.x * t,
                                    static_cast<double>(g.nx));
    double r2 = dx * dx;
    if (d == 2) {
      const double dy = nearest_image(static_cast<double>(g.iy(j)) - c.y0 - c.u.y * t,
                                      static_cast<double>(g.ny));
      r2 += dy * dy;
    }
    out[j] = amp * c.phi0 * std::exp(-r2 / (2.0 * s2));
  }
  return out;
}

double rel_l2(const std::vector<double>& num, const std::vector<double>& exact) {
  double e = 0.0;
  double n = 0.0;
  for (std::size_t j = 0; j < num.size(); ++j) {
    e += (num[j] - exact[j]) * (num[j] - exact[j]);
    n += exact[j] * exact[j];
  }
  return n > 0.0 ? std::sqrt(e / n) : std::sqrt(e);
}

double rel_linf(const std::vector<double>& num, const std::vector<double>& exact) {
  double n = 0.0;
  for (double v : exact) n = std::max(n, std::abs(v));
  const double e = max_abs_diff(num, exact);
  return n > 0.0 ? e / n : e;
}

double BenchReport::max_path_deviation() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.path_vs_classical_max);
  return m;
}

double BenchReport::max_mass_drift() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.mass_drift);
  return m;
}

double BenchReport::max_rel_l2_corrected() const {
  double m = 0.0;
  for (const auto& s : steps) m = std::max(m, s.rel_l2_corrected);
  return m;
}

BenchReport run_case(const GaussCase& c) {
  c.validate();
  const auto vs = lattice::velocity_set(c.model);
  const auto& grid = c.grid;
  const auto u = lattice::VelocityField::uniform(c.u);
  const double omega = c.resolved_omega();
  const std::size_t n = grid.n();
  const std::size_t q = vs.q();
  const std::size_t max_steps = *std::max_element(c.steps.begin(), c.steps.end());

  BenchReport rep;
  rep.config = c;
  rep.omega = omega;
  rep.diffusion = lattice::diffusion_coefficient(c.tau_star, grid);

  const std::vector<double> phi_init = gauss_init(c);
  const auto f0 = lbm::init_equilibrium(phi_init, u, vs, grid);
  const auto classical = lbm::run(f0, u, c.tau_star, max_steps, false);

  // numeric[k] for every k in c.steps.
  std::vector<std::vector<double>> numeric(c.steps.size());
  std::vector<double> success(c.steps.size(), 0.0);
  std::vector<double> predicted(c.steps.size(), 0.0);

  const marching::MarchingState s0 = marching::MarchingState::pack(f0, omega);
  marching::Marcher marcher(u, c.tau_star, omega, vs, grid);

  switch (c.path) {
    case Path::classical: {
      rep.encoding = "none";
      for (std::size_t k = 0; k < c.steps.size(); ++k) numeric[k] = classical.phi[c.steps[k]];
      break;
    }
    case Path::marching: {
      rep.encoding = "M_omega (matrix-free)";
      const auto traj = marcher.run(s0, max_steps);
      for (std::size_t k = 0; k < c.steps.size(); ++k) numeric[k] = traj[c.steps[k]].phi();
      break;
    }
    case Path::qlsa: {
      rep.encoding = c.pad ? "L (copy-padded), forward substitution" : "L, forward substitution";
      if (max_steps == 0) {
        for (std::size_t k = 0; k < c.steps.size(); ++k) numeric[k] = s0.phi();
        break;
      }
      std::vector<ops::Operator> B;
      for (std::size_t t = 0; t < max_steps; ++t) B.push_back(marcher.ops_for(t).M_omega);
      const auto sys = qlsa::assemble(std::move(B), s0.psi, c.pad);
      const auto sol = qlsa::solve_forward(sys);
      for (std::size_t k = 0; k < c.steps.size(); ++k)
        numeric[k] = phi_of(sol.blocks[c.steps[k]], q, n, omega);
      break;
    }
    case Path::dilated: {
      const auto& set = marcher.ops_for(0);
      const std::size_t counter = std::size_t{1} << dilation::counter_qubits(max_steps);
      be::BlockEncoding enc;
      bool built = false;
      if (vs.q() == 5 && c.tau_star >= 1.0) {
        be::LbmContext ctx{u, vs, grid, c.tau_star, 0};
        enc = be::be_Momega(ctx, omega);
        built = enc.dim() * counter <= c.max_amplitudes;
        if (built) rep.encoding = "M_omega circuit encoding";
      }
      if (!built) {
        const std::size_t p = next_pow2((q + 1) * n);
        if (p > kDenseEncodingLimit || 2 * p * counter > c.max_amplitudes) {
          throw std::length_error("dilated path: system of dimension " +
                                  std::to_string((q + 1) * n) +
                                  " is beyond the emulator's dilated-register budget");
        }
        enc = be::be_dense(set.M_omega, be::alpha_M(omega), "M_omega (dense completion)");
        rep.encoding = "M_omega dense completion, alpha = alpha_M";
      }
      for (std::size_t k = 0; k < c.steps.size(); ++k) {
        if (c.steps[k] == 0) {
          numeric[k] = s0.phi();
          success[k] = predicted[k] = 1.0;
          continue;
        }
        const std::vector<be::BlockEncoding> encs(c.steps[k], enc);
        dilation::DilatedRunOptions o;
        o.max_amplitudes = c.max_amplitudes;
        o.record_steps = false;
        const auto r = dilation::dilated_run(s0.psi, encs, o);
        numeric[k] = phi_of(r.psi_T_estimate, q, n, omega);
        success[k] = r.success_prob;
        predicted[k] = r.predicted_prob;
      }
      break;
    }
  }

  const double mass0 = sum(phi_init);
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    StepResult s;
    s.step = c.steps[k];
    const double t = static_cast<double>(s.step) * grid.dt;
    s.numeric = std::move(numeric[k]);
    s.classical = classical.phi[s.step];
    s.analytic_paper = gauss_analytic(c, t, AnalyticMode::paper);
    s.analytic_corrected = gauss_analytic(c, t, AnalyticMode::corrected);
    s.rel_l2_paper = rel_l2(s.numeric, s.analytic_paper);
    s.rel_l2_corrected = rel_l2(s.numeric, s.analytic_corrected);
    s.rel_linf_paper = rel_linf(s.numeric, s.analytic_paper);
    s.rel_linf_corrected = rel_linf(s.numeric, s.analytic_corrected);
    s.mass_drift = std::abs(sum(s.numeric) - mass0) / std::abs(mass0);
    s.path_vs_classical_max = max_abs_diff(s.numeric, s.classical);
    s.success_prob = success[k];
    s.predicted_prob = predicted[k];
    rep.steps.push_back(std::move(s));
  }
  return rep;
}

std::vector<GaussCase> benchmark_cases_1d(Path path, double u) {
  std::vector<GaussCase> out;
  for (double tau : {0.8, 1.0, 1.3}) {
    GaussCase c;
    c.id = "gauss1d_tau" + csv::num(tau);
    c.model = "d1q3";
    c.grid = lattice::GridSpec::make(128, 1);
    c.sigma0 = 15.0;
    c.x0 = 64.0;
    c.u = {u, 0.0};
    c.tau_star = tau;
    c.steps = {20, 40};
    c.path = path;
    out.push_back(c);
  }
  return out;
}

std::vector<GaussCase> benchmark_cases_2d(Path path) {
  std::vector<GaussCase> out;
  for (double tau : {0.8, 1.0, 1.3}) {
    GaussCase c;
    c.id = "gauss2d_tau" + csv::num(tau);
    c.model = "d2q5";
    c.grid = lattice::GridSpec::make(64, 64);
    c.sigma0 = 5.0;
    c.x0 = 32.0;
    c.y0 = 32.0;
    c.u = {0.2, 0.2};
    c.tau_star = tau;
    c.steps = {10, 30};
    c.path = path;
    out.push_back(c);
  }
  return out;
}

void write_case_csv(std::ostream& out, const BenchReport& r) {
  csv::Writer w(out);
  w.row({"step", "ix", "iy", "phi_numeric", "phi_classical", "phi_analytic_paper",
         "phi_analytic_corrected"});
  const auto& g = r.config.grid;
  for (const auto& s : r.steps) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      w.cell(s.step);
      w.cell(g.ix(j));
      w.cell(g.iy(j));
      w.cell(s.numeric[j]);
      w.cell(s.classical[j]);
      w.cell(s.analytic_paper[j]);
      w.cell(s.analytic_corrected[j]);
      w.end_row();
    }
  }
}

void write_summary_header(std::ostream& out) {
  csv::Writer w(out);
  w.row({"case_id", "path", "tau_star", "steps", "rel_l2_paper", "rel_l2_corrected", "rel_linf",
         "mass_drift", "path_vs_classical_max"});
}

void write_summary_rows(std::ostream& out, const BenchReport& r) {
  csv::Writer w(out);
  for (const auto& s : r.steps) {
    w.cell(r.config.id);
    w.cell(to_string(r.config.path));
    w.cell(r.config.tau_star);
    w.cell(s.step);
    w.cell(s.rel_l2_paper);
    w.cell(s.rel_l2_corrected);
    w.cell(s.rel_linf_corrected);
    w.cell(s.mass_drift);
    w.cell(s.path_vs_classical_max);
    w.end_row();
  }
}

}  // namespace bench
}  // namespace qlbm
