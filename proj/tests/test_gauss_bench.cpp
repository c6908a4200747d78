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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "qlbm/gauss_bench.hpp"

namespace qlbm {
namespace {

bench::GaussCase line_case() {
  bench::GaussCase c;
  c.id = "line";
  c.model = "d1q3";
  c.grid = lattice::GridSpec::make(128, 1);
  c.phi0 = 0.3;
  c.sigma0 = 15.0;
  c.x0 = 64.0;
  c.u = {0.2, 0.0};
  c.tau_star = 1.3;
  c.steps = {15};
  return c;
}

bench::GaussCase small_case(const std::string& model, bench::Path path, double tau) {
  bench::GaussCase c;
  c.id = "small";
  c.model = model;
  c.grid = model == "d1q3" ? lattice::GridSpec::make(16, 1) : lattice::GridSpec::make(8, 8);
  c.sigma0 = 2.0;
  c.x0 = model == "d1q3" ? 8.0 : 4.0;
  c.y0 = model == "d1q3" ? 0.0 : 4.0;
  c.u = {0.2, model == "d1q3" ? 0.0 : 0.1};
  c.tau_star = tau;
  c.steps = {3, 6};
  c.path = path;
  return c;
}

TEST(GaussBench, DefaultOmega) {
  EXPECT_NEAR(bench::default_omega(1.3), 0.3 / 1.3, 1e-15);
  EXPECT_DOUBLE_EQ(bench::default_omega(1.0), 0.5);
  EXPECT_DOUBLE_EQ(bench::default_omega(0.8), 0.5);
}

TEST(GaussBench, InitialHill) {
  const auto c = line_case();
  const auto phi = bench::gauss_init(c);
  EXPECT_DOUBLE_EQ(phi[64], 0.3);
  EXPECT_NEAR(phi[79], 0.18195919791379003, 1e-15);
  EXPECT_NEAR(phi[49], 0.18195919791379003, 1e-15);
}

TEST(GaussBench, NearestImageWraps) {
  auto c = line_case();
  c.x0 = 2.0;
  const auto phi = bench::gauss_init(c);
  EXPECT_NEAR(phi[126], phi[6], 1e-15);
}

// At t = 15 with τ* = 1.3, 2Dt = 8, so σ² = 233 and the peak sits at x₀ + 3.
TEST(GaussBench, AnalyticPeakBothModes) {
  const auto c = line_case();
  const auto paper = bench::gauss_analytic(c, 15.0, bench::AnalyticMode::paper);
  const auto corrected = bench::gauss_analytic(c, 15.0, bench::AnalyticMode::corrected);
  EXPECT_NEAR(paper[67], 0.28969957081545067, 1e-14);
  EXPECT_NEAR(corrected[67], 0.29480480193618824, 1e-14);
}

TEST(GaussBench, RelativeErrors) {
  EXPECT_NEAR(bench::rel_l2({1.0, 2.0}, {1.0, 1.0}), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bench::rel_linf({1.0, 3.0}, {1.0, 2.0}), 0.5, 1e-15);
}

TEST(GaussBench, MarchingMatchesClassical) {
  for (double tau : {0.8, 1.0, 1.3}) {
    const auto r = bench::run_case(small_case("d2q5", bench::Path::marching, tau));
    EXPECT_LE(r.max_path_deviation(), 1e-12) << tau;
    EXPECT_LE(r.max_mass_drift(), 1e-12) << tau;
    ASSERT_EQ(r.steps.size(), 2u);
  }
}

TEST(GaussBench, QlsaPathMatchesClassical) {
  const auto r = bench::run_case(small_case("d1q3", bench::Path::qlsa, 1.3));
  EXPECT_LE(r.max_path_deviation(), 1e-12);
}

TEST(GaussBench, DilatedPathMatchesClassical) {
  const auto r = bench::run_case(small_case("d1q3", bench::Path::dilated, 1.3));
  EXPECT_LE(r.max_path_deviation(), 1e-9);
  for (const auto& s : r.steps) EXPECT_NEAR(s.success_prob, s.predicted_prob, 1e-12);
}

TEST(GaussBench, DilatedPathRejectsLargeGrid) {
  auto c = small_case("d2q5", bench::Path::dilated, 1.3);
  c.grid = lattice::GridSpec::make(64, 64);
  c.x0 = c.y0 = 32.0;
  EXPECT_THROW(bench::run_case(c), std::length_error);
}

TEST(GaussBench, CsvLayout) {
  const auto r = bench::run_case(small_case("d1q3", bench::Path::marching, 1.0));
  std::ostringstream os;
  bench::write_case_csv(os, r);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "step,ix,iy,phi_numeric,phi_classical,phi_analytic_paper,phi_analytic_corrected");
  std::ostringstream sum;
  bench::write_summary_header(sum);
  bench::write_summary_rows(sum, r);
  std::string first;
  std::istringstream in(sum.str());
  std::getline(in, first);
  EXPECT_EQ(first.substr(0, 13), "case_id,path,");
}

TEST(GaussBench, BenchmarkCases) {
  const auto one = bench::benchmark_cases_1d(bench::Path::marching);
  ASSERT_EQ(one.size(), 3u);
  EXPECT_EQ(one[0].grid.nx, 128u);
  EXPECT_EQ(one[0].steps, (std::vector<std::size_t>{20, 40}));
  const auto two = bench::benchmark_cases_2d(bench::Path::marching);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[2].grid.ny, 64u);
  EXPECT_DOUBLE_EQ(two[2].tau_star, 1.3);
}

}  // namespace
}  // namespace qlbm
