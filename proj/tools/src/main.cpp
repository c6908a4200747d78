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

#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

using qlbm::cli::ConfigError;
using qlbm::cli::Need;
using qlbm::cli::RawConfig;

struct Overrides {
  std::string config;
  std::string out;
  std::string seed;
  std::string tol;
  std::string path;
};

void add_common(CLI::App* app, Overrides& o, bool with_path) {
  app->add_option("-c,--config", o.config, "Configuration file (key = value)");
  app->add_option("-o,--out", o.out, "Output directory");
  app->add_option("--seed", o.seed, "Random seed");
  app->add_option("--tol", o.tol, "Check tolerance");
  if (with_path)
    app->add_option("--path", o.path, "classical | marching | dilated | qlsa");
}

RawConfig load(const Overrides& o) {
  RawConfig raw;
  if (!o.config.empty()) raw = qlbm::cli::load_config(o.config);
  auto set = [&](const char* key, const std::string& v) {
    if (v.empty()) return;
    if (!raw.values.count(key)) raw.order.push_back(key);
    raw.values[key] = v;
  };
  set("out", o.out);
  set("seed", o.seed);
  set("tol", o.tol);
  set("path", o.path);
  return raw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Boltzmann advection-diffusion: classical, marching and encoded paths"};
  app.set_version_flag("--version", std::string(qlbm::cli::kVersion));
  app.require_subcommand(1);

  Overrides bench_o, verify_o, cx_o;
  std::string suite = "all";
  auto* bench = app.add_subcommand("bench", "Run Gaussian hill benchmark cases");
  add_common(bench, bench_o, true);
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  add_common(verify, verify_o, false);
  verify->add_option("--suite", suite, "marching | norm | be | dilation | usva | qlsa | all");
  auto* cx = app.add_subcommand("complexity", "Tabulate query-complexity estimates");
  add_common(cx, cx_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qlbm::cli::kExitPass : qlbm::cli::kExitInvalid;
  }

  try {
    if (bench->parsed()) {
      const auto cfg = qlbm::cli::resolve(load(bench_o), Need::bench);
      return qlbm::cli::cmd_bench(cfg, std::cerr);
    }
    if (verify->parsed()) {
      const auto cfg = qlbm::cli::resolve(load(verify_o), Need::verify);
      return qlbm::cli::cmd_verify(suite, cfg, std::cerr);
    }
    const auto cfg = qlbm::cli::resolve(load(cx_o), Need::complexity);
    return qlbm::cli::cmd_complexity(cfg, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return qlbm::cli::kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return qlbm::cli::kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qlbm::cli::kExitCheckFailed;
  }
}
