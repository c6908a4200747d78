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

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlbm/gauss_bench.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {
namespace cli {

// Raised for malformed or incomplete configuration; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Flat key = value file; '#' starts a comment. Unknown keys are errors.
struct RawConfig {
  std::map<std::string, std::string> values;
  std::vector<std::string> order;
};

RawConfig parse_config(std::istream& in);
RawConfig load_config(const std::string& path);
const std::vector<std::string>& known_keys();

struct RunConfig {
  std::string id = "run";
  std::string model;
  std::size_t nx = 0;
  std::size_t ny = 1;
  double dx = 1.0;
  double dt = 1.0;
  std::vector<double> tau_star;
  // Empty selects 1 − 1/τ* when coupled and τ* > 1, otherwise 0.5.
  std::optional<double> omega;
  bool coupled = true;
  double ux = 0.0;
  double uy = 0.0;
  std::string velocity_table;
  double phi0 = 0.3;
  double sigma0 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<std::size_t> steps;
  bench::Path path = bench::Path::marching;
  bool pad = true;
  double tol = 1e-9;
  std::string out = "out";
  std::uint64_t seed = 20240501;

  // Verification and sweep sizes.
  std::size_t norm_samples = 100;
  std::vector<double> norm_omegas{0.3, 0.5, 0.6, 0.75};
  std::size_t norm_max_grid = 8;
  std::size_t be_max_qubits = 3;
  double verify_tau_star = 1.3;
  std::size_t dilation_max_nodes = 8;
  std::size_t dilation_max_steps = 5;
  std::size_t qlsa_systems = 200;
  std::size_t qlsa_max_steps = 32;
  std::vector<std::size_t> nt_sweep{10, 100, 1000};
  std::vector<double> eps_sweep{1e-3};
  double psi0_norm = 1.0;
  double norm_ratio = 1.0;

  lattice::GridSpec grid() const;
  lattice::VelocitySet velocity_set() const;
  double omega_for(double tau) const;
  std::vector<bench::GaussCase> cases() const;
};

// What each command needs before it can run.
enum class Need { bench, verify, complexity };

// Validates and converts; throws ConfigError naming the first bad field.
RunConfig resolve(const RawConfig& raw, Need need);

// Echo of every resolved field, one "key = value" line each.
void write_config_echo(std::ostream& out, const RunConfig& cfg);

}  // namespace cli
}  // namespace qlbm
