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

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "qlbm/csv.hpp"

namespace qlbm {
namespace cli {

namespace {

std::string trim(std::string s) {
  boost::algorithm::trim(s);
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* b = v.data();
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e || !std::isfinite(out))
    throw ConfigError(key, "'" + v + "' is not a finite number");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const char* e = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), e, out);
  if (ec != std::errc() || p != e)
    throw ConfigError(key, "'" + v + "' is not a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "'" + v + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, v, boost::algorithm::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    p = trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

template <typename T, typename F>
std::vector<T> to_list(const std::string& key, const std::string& v, F conv) {
  std::vector<T> out;
  for (const auto& p : split_list(v)) out.push_back(static_cast<T>(conv(key, p)));
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>)
      s += csv::num(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "id", "model", "nx", "ny", "dx", "dt", "tau_star", "omega", "coupled", "ux", "uy",
      "velocity_table", "phi0", "sigma0", "x0", "y0", "steps", "path", "pad", "tol", "out",
      "seed", "norm_samples", "norm_omegas", "norm_max_grid", "be_max_qubits",
      "verify_tau_star", "dilation_max_nodes", "dilation_max_steps", "qlsa_systems",
      "qlsa_max_steps", "nt_sweep", "eps_sweep", "psi0_norm", "norm_ratio"};
  return keys;
}

RawConfig parse_config(std::istream& in) {
  RawConfig raw;
  std::string line;
  std::size_t lineno = 0;
  const auto& keys = known_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(key, "unknown key (line " + std::to_string(lineno) + ")");
    if (raw.values.count(key))
      throw ConfigError(key, "duplicate key (line " + std::to_string(lineno) + ")");
    raw.values[key] = value;
    raw.order.push_back(key);
  }
  return raw;
}

RawConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  return parse_config(in);
}

lattice::GridSpec RunConfig::grid() const { return lattice::GridSpec::make(nx, ny, dx, dt); }

lattice::VelocitySet RunConfig::velocity_set() const { return lattice::velocity_set(model); }

double RunConfig::omega_for(double tau) const {
  if (omega) return *omega;
  return coupled ? bench::default_omega(tau) : 0.5;
}

std::vector<bench::GaussCase> RunConfig::cases() const {
  std::vector<bench::GaussCase> out;
  for (double tau : tau_star) {
    bench::GaussCase c;
    c.id = id + "_tau" + csv::num(tau);
    c.model = model;
    c.grid = grid();
    c.phi0 = phi0;
    c.sigma0 = sigma0;
    c.x0 = x0;
    c.y0 = y0;
    c.u = {ux, uy};
    c.tau_star = tau;
    c.omega = omega_for(tau);
    c.steps = steps;
    c.path = path;
    c.pad = pad;
    out.push_back(c);
  }
  return out;
}

RunConfig resolve(const RawConfig& raw, Need need) {
  RunConfig c;
  auto has = [&](const std::string& k) { return raw.values.count(k) > 0; };
  auto get = [&](const std::string& k) { return raw.values.at(k); };
  auto require = [&](const std::string& k) {
    if (!has(k)) throw ConfigError(k, "missing (required)");
    return get(k);
  };

  if (has("id")) c.id = get("id");
  const bool needs_grid = need == Need::bench;
  if (needs_grid || has("model")) {
    c.model = needs_grid ? require("model") : get("model");
    if (c.model != "d1q3" && c.model != "d2q5")
      throw ConfigError("model", "'" + c.model + "' is not one of d1q3|d2q5");
  }
  if (need == Need::bench) {
    c.nx = to_uint("nx", require("nx"));
    if (c.model == "d2q5")
      c.ny = to_uint("ny", require("ny"));
    else if (has("ny"))
      c.ny = to_uint("ny", get("ny"));
  } else {
    if (has("nx")) c.nx = to_uint("nx", get("nx"));
    if (has("ny")) c.ny = to_uint("ny", get("ny"));
  }
  if (has("dx")) c.dx = to_double("dx", get("dx"));
  if (has("dt")) c.dt = to_double("dt", get("dt"));
  if (need == Need::bench || has("nx")) {
    if (!lattice::is_power_of_two(c.nx))
      throw ConfigError("nx", std::to_string(c.nx) + " is not a power of two");
    if (!lattice::is_power_of_two(c.ny))
      throw ConfigError("ny", std::to_string(c.ny) + " is not a power of two");
    if (c.model == "d1q3" && c.ny != 1) throw ConfigError("ny", "d1q3 needs ny = 1");
  }
  if (!(c.dx > 0.0)) throw ConfigError("dx", "must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("dt", "must be positive");

  if (need == Need::bench)
    c.tau_star = to_list<double>("tau_star", require("tau_star"), to_double);
  else if (has("tau_star"))
    c.tau_star = to_list<double>("tau_star", get("tau_star"), to_double);
  for (double t : c.tau_star)
    if (!(t > 0.5)) throw ConfigError("tau_star", csv::num(t) + " must exceed 1/2");

  if (has("coupled")) c.coupled = to_bool("coupled", get("coupled"));
  if (has("omega") && get("omega") != "auto") {
    c.omega = to_double("omega", get("omega"));
    if (!(*c.omega > 0.0 && *c.omega < 1.0))
      throw ConfigError("omega", csv::num(*c.omega) + " is outside (0, 1)");
  }
  if (has("ux")) c.ux = to_double("ux", get("ux"));
  if (has("uy")) c.uy = to_double("uy", get("uy"));
  if (c.model == "d1q3" && c.uy != 0.0) throw ConfigError("uy", "must be 0 for d1q3");
  if (has("velocity_table")) {
    c.velocity_table = get("velocity_table");
    if (need == Need::bench)
      throw ConfigError("velocity_table", "the Gauss Hill benchmark uses a uniform velocity");
  }
  if (has("phi0")) c.phi0 = to_double("phi0", get("phi0"));
  if (need == Need::bench) {
    c.sigma0 = to_double("sigma0", require("sigma0"));
    if (!(c.sigma0 > 0.0)) throw ConfigError("sigma0", "must be positive");
    c.x0 = to_double("x0", require("x0"));
    if (c.model == "d2q5") c.y0 = to_double("y0", require("y0"));
    c.steps = to_list<std::size_t>("steps", require("steps"), to_uint);
  } else {
    if (has("sigma0")) c.sigma0 = to_double("sigma0", get("sigma0"));
    if (has("x0")) c.x0 = to_double("x0", get("x0"));
    if (has("y0")) c.y0 = to_double("y0", get("y0"));
    if (has("steps")) c.steps = to_list<std::size_t>("steps", get("steps"), to_uint);
  }
  if (has("path")) {
    try {
      c.path = bench::parse_path(get("path"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("path", e.what());
    }
  }
  if (has("pad")) c.pad = to_bool("pad", get("pad"));
  if (has("tol")) c.tol = to_double("tol", get("tol"));
  if (!(c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (has("out")) c.out = get("out");
  if (has("seed")) c.seed = to_uint("seed", get("seed"));

  if (has("norm_samples")) c.norm_samples = to_uint("norm_samples", get("norm_samples"));
  if (has("norm_omegas")) c.norm_omegas = to_list<double>("norm_omegas", get("norm_omegas"), to_double);
  for (double w : c.norm_omegas)
    if (!(w > 0.0 && w < 1.0)) throw ConfigError("norm_omegas", csv::num(w) + " is outside (0, 1)");
  if (has("norm_max_grid")) c.norm_max_grid = to_uint("norm_max_grid", get("norm_max_grid"));
  if (!lattice::is_power_of_two(c.norm_max_grid))
    throw ConfigError("norm_max_grid", "must be a power of two");
  if (has("be_max_qubits")) c.be_max_qubits = to_uint("be_max_qubits", get("be_max_qubits"));
  if (has("verify_tau_star")) c.verify_tau_star = to_double("verify_tau_star", get("verify_tau_star"));
  if (!(c.verify_tau_star > 1.0)) throw ConfigError("verify_tau_star", "must exceed 1");
  if (has("dilation_max_nodes"))
    c.dilation_max_nodes = to_uint("dilation_max_nodes", get("dilation_max_nodes"));
  if (!lattice::is_power_of_two(c.dilation_max_nodes))
    throw ConfigError("dilation_max_nodes", "must be a power of two");
  if (has("dilation_max_steps"))
    c.dilation_max_steps = to_uint("dilation_max_steps", get("dilation_max_steps"));
  if (has("qlsa_systems")) c.qlsa_systems = to_uint("qlsa_systems", get("qlsa_systems"));
  if (has("qlsa_max_steps")) c.qlsa_max_steps = to_uint("qlsa_max_steps", get("qlsa_max_steps"));
  if (c.qlsa_max_steps < 1) throw ConfigError("qlsa_max_steps", "must be at least 1");
  if (has("nt_sweep")) c.nt_sweep = to_list<std::size_t>("nt_sweep", get("nt_sweep"), to_uint);
  for (auto n : c.nt_sweep)
    if (n < 2) throw ConfigError("nt_sweep", "entries must be at least 2");
  if (has("eps_sweep")) c.eps_sweep = to_list<double>("eps_sweep", get("eps_sweep"), to_double);
  for (double e : c.eps_sweep)
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("eps_sweep", "entries must lie in (0, 1)");
  if (has("psi0_norm")) c.psi0_norm = to_double("psi0_norm", get("psi0_norm"));
  if (!(c.psi0_norm > 0.0)) throw ConfigError("psi0_norm", "must be positive");
  if (has("norm_ratio")) c.norm_ratio = to_double("norm_ratio", get("norm_ratio"));
  if (!(c.norm_ratio > 0.0)) throw ConfigError("norm_ratio", "must be positive");

  if (need == Need::bench) {
    for (double tau : c.tau_star) {
      const double w = c.omega_for(tau);
      if (!(w > 0.0 && w < 1.0)) throw ConfigError("omega", "resolved value outside (0, 1)");
    }
  }
  return c;
}

void write_config_echo(std::ostream& out, const RunConfig& c) {
  out << "id = " << c.id << "\n";
  out << "model = " << c.model << "\n";
  out << "nx = " << c.nx << "\n";
  out << "ny = " << c.ny << "\n";
  out << "dx = " << csv::num(c.dx) << "\n";
  out << "dt = " << csv::num(c.dt) << "\n";
  out << "tau_star = " << join(c.tau_star) << "\n";
  out << "omega = " << (c.omega ? csv::num(*c.omega) : std::string("auto")) << "\n";
  out << "coupled = " << (c.coupled ? "true" : "false") << "\n";
  out << "ux = " << csv::num(c.ux) << "\n";
  out << "uy = " << csv::num(c.uy) << "\n";
  if (!c.velocity_table.empty()) out << "velocity_table = " << c.velocity_table << "\n";
  out << "phi0 = " << csv::num(c.phi0) << "\n";
  out << "sigma0 = " << csv::num(c.sigma0) << "\n";
  out << "x0 = " << csv::num(c.x0) << "\n";
  out << "y0 = " << csv::num(c.y0) << "\n";
  out << "steps = " << join(c.steps) << "\n";
  out << "path = " << bench::to_string(c.path) << "\n";
  out << "pad = " << (c.pad ? "true" : "false") << "\n";
  out << "tol = " << csv::num(c.tol) << "\n";
  out << "out = " << c.out << "\n";
  out << "seed = " << c.seed << "\n";
  out << "norm_samples = " << c.norm_samples << "\n";
  out << "norm_omegas = " << join(c.norm_omegas) << "\n";
  out << "norm_max_grid = " << c.norm_max_grid << "\n";
  out << "be_max_qubits = " << c.be_max_qubits << "\n";
  out << "verify_tau_star = " << csv::num(c.verify_tau_star) << "\n";
  out << "dilation_max_nodes = " << c.dilation_max_nodes << "\n";
  out << "dilation_max_steps = " << c.dilation_max_steps << "\n";
  out << "qlsa_systems = " << c.qlsa_systems << "\n";
  out << "qlsa_max_steps = " << c.qlsa_max_steps << "\n";
  out << "nt_sweep = " << join(c.nt_sweep) << "\n";
  out << "eps_sweep = " << join(c.eps_sweep) << "\n";
  out << "psi0_norm = " << csv::num(c.psi0_norm) << "\n";
  out << "norm_ratio = " << csv::num(c.norm_ratio) << "\n";
}

}  // namespace cli
}  // namespace qlbm
