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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

namespace qlbm {
namespace {

namespace fs = std::filesystem;

cli::RawConfig parse(const std::string& text) {
  std::istringstream in(text);
  return cli::parse_config(in);
}

std::string error_of(const std::string& text, cli::Need need) {
  try {
    cli::resolve(parse(text), need);
  } catch (const cli::ConfigError& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qlbm_test_" + name);
  fs::remove_all(p);
  return p;
}

const char* kSmallBench =
    "model = d1q3\nnx = 16\ntau_star = 0.8, 1.3\nux = 0.1\nsigma0 = 2\nx0 = 8\nsteps = 2, 4\n";

TEST(Config, ParsesCommentsAndLists) {
  const auto raw = parse("# header\nmodel = d1q3 # inline\n\ntau_star = 0.8, 1.0 ,1.3\n");
  EXPECT_EQ(raw.values.at("model"), "d1q3");
  EXPECT_EQ(raw.order.size(), 2u);
}

TEST(Config, RejectsUnknownAndDuplicateKeys) {
  EXPECT_THROW(parse("colour = red\n"), cli::ConfigError);
  EXPECT_THROW(parse("nx = 4\nnx = 8\n"), cli::ConfigError);
  EXPECT_THROW(parse("just text\n"), cli::ConfigError);
}

TEST(Config, MissingFieldIsNamed) {
  EXPECT_EQ(error_of("model = d1q3\ntau_star = 1\nsigma0 = 2\nx0 = 1\nsteps = 1\n",
                     cli::Need::bench),
            "nx: missing (required)");
}

TEST(Config, ValidatesValues) {
  EXPECT_EQ(error_of("model = d1q3\nnx = 100\n", cli::Need::bench).substr(0, 3), "nx:");
  EXPECT_EQ(error_of("model = d3q9\n", cli::Need::bench).substr(0, 6), "model:");
  EXPECT_EQ(error_of(std::string(kSmallBench) + "uy = 0.1\n", cli::Need::bench).substr(0, 3),
            "uy:");
  EXPECT_EQ(error_of("tau_star = 0.4\n", cli::Need::complexity).substr(0, 9), "tau_star:");
  EXPECT_EQ(error_of("omega = 1.5\n", cli::Need::verify).substr(0, 6), "omega:");
  EXPECT_EQ(error_of("tol = abc\n", cli::Need::verify).substr(0, 4), "tol:");
}

TEST(Config, BenchmarkConfigsResolve) {
  for (const char* name : {"gauss1d.cfg", "gauss2d.cfg"}) {
    const auto cfg =
        cli::resolve(cli::load_config(std::string(QLBM_CONFIG_DIR) + "/" + name), cli::Need::bench);
    const auto cases = cfg.cases();
    ASSERT_EQ(cases.size(), 3u) << name;
    EXPECT_NO_THROW(cases[0].validate());
  }
}

TEST(Commands, BenchWritesCsvAndManifest) {
  const auto dir = scratch("bench");
  auto raw = parse(kSmallBench);
  raw.values["out"] = dir.string();
  const auto cfg = cli::resolve(raw, cli::Need::bench);
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_bench(cfg, log), cli::kExitPass) << log.str();
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_TRUE(fs::exists(dir / "manifest.txt"));
  EXPECT_TRUE(fs::exists(dir / "run_tau1.3_marching.csv"));
  std::ifstream man(dir / "manifest.txt");
  std::stringstream text;
  text << man.rdbuf();
  EXPECT_NE(text.str().find("tau_star[1.3].alpha_M"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Commands, VerifyRejectsUnknownSuite) {
  const auto cfg = cli::resolve(parse(""), cli::Need::verify);
  std::ostringstream log;
  EXPECT_THROW(cli::cmd_verify("everything", cfg, log), cli::ConfigError);
}

TEST(Commands, VerifyUsvaPasses) {
  const auto dir = scratch("verify");
  auto raw = parse("");
  raw.values["out"] = dir.string();
  const auto cfg = cli::resolve(raw, cli::Need::verify);
  std::ostringstream log;
  EXPECT_EQ(cli::cmd_verify("usva", cfg, log), cli::kExitPass) << log.str();
  EXPECT_TRUE(fs::exists(dir / "verify_usva.csv"));
  fs::remove_all(dir);
}

TEST(Commands, ComplexitySweep) {
  const auto cfg = cli::resolve(parse("nt_sweep = 10, 1000\neps_sweep = 1e-2\n"),
                                cli::Need::complexity);
  const auto rows = cli::complexity_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].timemarch.queries_per_step, 69.07755278982137, 1e-11);
  EXPECT_GT(rows[0].ratio, 0.0);
  std::ostringstream os;
  cli::write_complexity_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, 12), "N_t,epsilon,");
}

}  // namespace
}  // namespace qlbm
