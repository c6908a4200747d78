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

#include "qlbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qlbm {
namespace lattice {

VelocitySet d2q5() {
  VelocitySet vs;
  vs.name = "d2q5";
  vs.d = 2;
  vs.e = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  vs.w_exact = {Rational(2, 6), Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 6)};
  for (const Rational& r : vs.w_exact) vs.w.push_back(boost::rational_cast<double>(r));
  return vs;
}

VelocitySet d1q3() {
  VelocitySet vs;
  vs.name = "d1q3";
  vs.d = 1;
  vs.e = {{0, 0}, {1, 0}, {-1, 0}};
  vs.w_exact = {Rational(4, 6), Rational(1, 6), Rational(1, 6)};
  for (const Rational& r : vs.w_exact) vs.w.push_back(boost::rational_cast<double>(r));
  return vs;
}

VelocitySet velocity_set(const std::string& name) {
  if (name == "d2q5") return d2q5();
  if (name == "d1q3") return d1q3();
  throw std::invalid_argument("unknown velocity set '" + name + "' (expected d1q3 or d2q5)");
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::size_t log2_exact(std::size_t v) {
  if (!is_power_of_two(v))
    throw std::invalid_argument(std::to_string(v) + " is not a power of two");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

GridSpec GridSpec::make(std::size_t nx, std::size_t ny, double dx, double dt) {
  if (!is_power_of_two(nx)) throw std::invalid_argument("nx = " + std::to_string(nx) + " is not a power of two");
  if (!is_power_of_two(ny)) throw std::invalid_argument("ny = " + std::to_string(ny) + " is not a power of two");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("dx must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.dx = dx;
  g.dt = dt;
  return g;
}

std::size_t GridSpec::qubits() const { return log2_exact(n()); }

VelocityField VelocityField::uniform(Velocity u) {
  VelocityField f;
  f.mode_ = Mode::uniform;
  f.u_ = u;
  f.validate(1);
  return f;
}

VelocityField VelocityField::per_node(std::vector<Velocity> table) {
  VelocityField f;
  f.mode_ = Mode::per_node;
  f.tables_.push_back(std::move(table));
  f.validate(f.tables_.front().size());
  return f;
}

VelocityField VelocityField::time_indexed(std::vector<std::vector<Velocity>> tables) {
  if (tables.empty()) throw std::invalid_argument("time_indexed: no tables");
  VelocityField f;
  f.mode_ = Mode::time_indexed;
  f.tables_ = std::move(tables);
  f.validate(f.tables_.front().size());
  return f;
}

void VelocityField::validate(std::size_t n) const {
  auto finite = [](const Velocity& v) { return std::isfinite(v.x) && std::isfinite(v.y); };
  if (mode_ == Mode::uniform) {
    if (!finite(u_)) throw std::invalid_argument("velocity field: non-finite uniform velocity");
    return;
  }
  for (std::size_t t = 0; t < tables_.size(); ++t) {
    if (tables_[t].size() != n) {
      throw std::invalid_argument("velocity field: table " + std::to_string(t) + " has " +
                                  std::to_string(tables_[t].size()) + " nodes, expected " +
                                  std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!finite(tables_[t][j]))
        throw std::invalid_argument("velocity field: non-finite entry at node " + std::to_string(j));
    }
  }
}

Velocity VelocityField::at(std::size_t node, std::size_t step) const {
  if (mode_ == Mode::uniform) return u_;
  const auto& table = tables_[std::min(step, tables_.size() - 1)];
  if (node >= table.size())
    throw std::out_of_range("velocity field: node " + std::to_string(node) + " out of range");
  return table[node];
}

std::size_t VelocityField::table_count() const {
  return mode_ == Mode::uniform ? 1 : tables_.size();
}

VelocityField VelocityField::from_csv(std::istream& in, const GridSpec& grid) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("velocity csv: empty input");
  std::vector<std::string> header;
  {
    std::stringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) {
      cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
      header.push_back(cell);
    }
  }
  if (header != std::vector<std::string>{"ix", "iy", "ux", "uy"})
    throw std::invalid_argument("velocity csv: header must be ix,iy,ux,uy");
  std::vector<Velocity> table(grid.n());
  std::vector<bool> seen(grid.n(), false);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ls(line);
    std::string a, b, c, d;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c, ',') ||
        !std::getline(ls, d)) {
      throw std::invalid_argument("velocity csv: row " + std::to_string(row) + " has too few columns");
    }
    std::size_t ix = 0, iy = 0;
    double ux = 0, uy = 0;
    try {
      ix = std::stoul(a);
      iy = std::stoul(b);
      ux = std::stod(c);
      uy = std::stod(d);
    } catch (const std::exception&) {
      throw std::invalid_argument("velocity csv: row " + std::to_string(row) + " is not numeric");
    }
    if (ix >= grid.nx || iy >= grid.ny)
      throw std::invalid_argument("velocity csv: row " + std::to_string(row) + " node out of grid");
    const std::size_t j = grid.node(ix, iy);
    if (seen[j]) throw std::invalid_argument("velocity csv: duplicate node at row " + std::to_string(row));
    seen[j] = true;
    table[j] = Velocity{ux, uy};
  }
  for (std::size_t j = 0; j < grid.n(); ++j) {
    if (!seen[j])
      throw std::invalid_argument("velocity csv: missing node (" + std::to_string(grid.ix(j)) +
                                  "," + std::to_string(grid.iy(j)) + ")");
  }
  return per_node(std::move(table));
}

VelocityField VelocityField::from_csv_file(const std::string& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open velocity table '" + path + "'");
  return from_csv(in, grid);
}

Equilibrium equilibrium(double phi, Velocity u, const VelocitySet& vs, const GridSpec& grid) {
  Equilibrium eq;
  eq.f.resize(vs.q());
  const double c = grid.c();
  const double cs2 = grid.cs2();
  // u is in lattice units, so the physical velocity is c·u.
  for (std::size_t i = 0; i < vs.q(); ++i) {
    const double cu = c * vs.e[i][0] * (c * u.x) + c * vs.e[i][1] * (c * u.y);
    if (std::abs(cu) > cs2 * (1.0 + 1e-12)) eq.negative = true;
    eq.f[i] = vs.w[i] * phi * (1.0 + cu / cs2);
  }
  return eq;
}

double moment_phi(const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s;
}

ops::Operator shift_operator(std::size_t n) {
  if (!is_power_of_two(n))
    throw std::invalid_argument("shift_operator: " + std::to_string(n) + " is not a power of two");
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = (i + 1) % n;
  return ops::permutation(std::move(map));
}

std::size_t stream_target(const VelocitySet& vs, const GridSpec& grid, std::size_t i,
                          std::size_t j) {
  const auto nx = static_cast<long long>(grid.nx);
  const auto ny = static_cast<long long>(grid.ny);
  long long x = static_cast<long long>(grid.ix(j)) + vs.e[i][0];
  long long y = static_cast<long long>(grid.iy(j)) + vs.e[i][1];
  x = ((x % nx) + nx) % nx;
  y = ((y % ny) + ny) % ny;
  return static_cast<std::size_t>(y * nx + x);
}

ops::Operator streaming_permutation(const VelocitySet& vs, const GridSpec& grid, std::size_t i) {
  if (i >= vs.q())
    throw std::invalid_argument("streaming_permutation: direction " + std::to_string(i) +
                                " >= Q = " + std::to_string(vs.q()));
  const int ex = vs.e[i][0];
  const int ey = vs.e[i][1];
  if (ex == 0 && ey == 0) return ops::identity(grid.n());
  // Node index j = iy·Nx + ix, so x is the low-order register.
  if (ey == 0) {
    ops::Operator sx = shift_operator(grid.nx);
    if (ex < 0) sx = sx.adjoint();
    return grid.ny == 1 ? sx : ops::tensor(ops::identity(grid.ny), sx);
  }
  ops::Operator sy = shift_operator(grid.ny);
  if (ey < 0) sy = sy.adjoint();
  return ops::tensor(sy, ops::identity(grid.nx));
}

LowMachReport check_low_mach(const VelocityField& u, const GridSpec& grid,
                             const VelocitySet* vs, std::size_t n_steps) {
  LowMachReport rep;
  rep.limit = (1.0 / 3.0) * grid.dx / grid.dt;
  rep.assumed_bound = vs != nullptr && vs->d == 1;
  const std::size_t tables = u.is_time_dependent() ? std::max(n_steps, u.table_count()) : 1;
  const std::size_t nodes = u.mode() == VelocityField::Mode::uniform ? 1 : grid.n();
  for (std::size_t t = 0; t < tables; ++t) {
    for (std::size_t j = 0; j < nodes; ++j) {
      const Velocity v = u.at(j, t);
      rep.max_abs_ux = std::max(rep.max_abs_ux, std::abs(v.x) * grid.c());
      rep.max_abs_uy = std::max(rep.max_abs_uy, std::abs(v.y) * grid.c());
    }
  }
  rep.holds = rep.max_abs_ux <= rep.limit + 1e-12 && rep.max_abs_uy <= rep.limit + 1e-12;
  return rep;
}

double diffusion_coefficient(double tau_star, const GridSpec& grid) {
  return (1.0 / 3.0) * (tau_star - 0.5) * grid.dx * grid.dx / grid.dt;
}

DiffusionCoefficient diffusion_coefficient_checked(double tau_star, const GridSpec& grid) {
  DiffusionCoefficient d;
  d.value = diffusion_coefficient(tau_star, grid);
  d.nonpositive = !(tau_star > 0.5);
  return d;
}

}  // namespace lattice
}  // namespace qlbm
