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

#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "qlbm/lattice.hpp"

// Gauss Hill benchmarks: a Gaussian concentration advected and diffused on a
// periodic lattice, compared against its closed-form solution.
namespace qlbm {
namespace bench {

enum class Path { classical, marching, dilated, qlsa };
std::string to_string(Path p);
Path parse_path(const std::string& s);

enum class AnalyticMode { paper, corrected };

struct GaussCase {
  std::string id;
  std::string model = "d1q3";
  lattice::GridSpec grid;
  double phi0 = 0.3;
  double sigma0 = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;
  lattice::Velocity u;
  double tau_star = 1.0;
  // 0 picks default_omega(tau_star).
  double omega = 0.0;
  std::vector<std::size_t> steps;
  Path path = Path::marching;
  // Copy-padded global system on the qlsa path.
  bool pad = true;
  // Largest dilated register the dilated path may allocate.
  std::size_t max_amplitudes = std::size_t{1} << 24;

  int dimension() const;
  double resolved_omega() const;
  void validate() const;
};

// 1 − 1/τ* when τ* > 1, otherwise 0.5.
double default_omega(double tau_star);

// φ₀·exp(−r²/(2σ₀²)) with r the periodic nearest-image distance to x₀.
std::vector<double> gauss_init(const GaussCase& c);
// Advected and diffused Gaussian at time t (lattice units). Paper mode uses
// the amplitude σ₀²/(σ₀²+σ_D²) in every dimension, corrected mode raises it to d/2.
std::vector<double> gauss_analytic(const GaussCase& c, double t, AnalyticMode mode);

struct StepResult {
  std::size_t step = 0;
  std::vector<double> numeric;
  std::vector<double> classical;
  std::vector<double> analytic_paper;
  std::vector<double> analytic_corrected;
  double rel_l2_paper = 0.0;
  double rel_l2_corrected = 0.0;
  double rel_linf_paper = 0.0;
  double rel_linf_corrected = 0.0;
  double mass_drift = 0.0;
  double path_vs_classical_max = 0.0;
  // Dilated path only: projection probability and its closed form.
  double success_prob = 0.0;
  double predicted_prob = 0.0;
};

struct BenchReport {
  GaussCase config;
  double diffusion = 0.0;
  double omega = 0.0;
  std::string encoding;
  std::vector<StepResult> steps;

  double max_path_deviation() const;
  double max_mass_drift() const;
  double max_rel_l2_corrected() const;
};

BenchReport run_case(const GaussCase& c);

// Relative L2 and L∞ error of num against exact.
double rel_l2(const std::vector<double>& num, const std::vector<double>& exact);
double rel_linf(const std::vector<double>& num, const std::vector<double>& exact);

// N_x = 128, x₀ = 64, σ₀ = 15, D1Q3, τ* ∈ {0.8, 1.0, 1.3}, steps {20, 40}.
std::vector<GaussCase> benchmark_cases_1d(Path path, double u = 0.2);
// 64×64, x₀ = (32, 32), σ₀ = 5, u = (0.2, 0.2), D2Q5, steps {10, 30}.
std::vector<GaussCase> benchmark_cases_2d(Path path);

// step, ix, iy, phi_numeric, phi_classical, phi_analytic_paper, phi_analytic_corrected
void write_case_csv(std::ostream& out, const BenchReport& r);
void write_summary_header(std::ostream& out);
// case_id, path, tau_star, steps, rel_l2_paper, rel_l2_corrected, rel_linf,
// mass_drift, path_vs_classical_max
void write_summary_rows(std::ostream& out, const BenchReport& r);

}  // namespace bench
}  // namespace qlbm
