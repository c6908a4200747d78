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

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "qlbm/structured_ops.hpp"

namespace qlbm {
namespace lattice {

using Rational = boost::rational<std::int64_t>;

struct VelocitySet {
  std::string name;
  int d = 0;
  std::vector<std::array<int, 2>> e;
  std::vector<double> w;
  std::vector<Rational> w_exact;

  std::size_t q() const { return e.size(); }
};

VelocitySet d2q5();
VelocitySet d1q3();
VelocitySet velocity_set(const std::string& name);

struct GridSpec {
  std::size_t nx = 1;
  std::size_t ny = 1;
  double dx = 1.0;
  double dt = 1.0;

  static GridSpec make(std::size_t nx, std::size_t ny = 1, double dx = 1.0, double dt = 1.0);

  std::size_t n() const { return nx * ny; }
  double c() const { return dx / dt; }
  double cs2() const { return c() * c() / 3.0; }
  std::size_t node(std::size_t ix, std::size_t iy) const { return iy * nx + ix; }
  std::size_t ix(std::size_t j) const { return j % nx; }
  std::size_t iy(std::size_t j) const { return j / nx; }
  // Qubits for the node register, n = log2(N).
  std::size_t qubits() const;
};

bool is_power_of_two(std::size_t v);
std::size_t log2_exact(std::size_t v);

// Velocities in lattice units (multiples of Δx/Δt).
struct Velocity {
  double x = 0.0;
  double y = 0.0;
};

class VelocityField {
 public:
  enum class Mode { uniform, per_node, time_indexed };

  static VelocityField uniform(Velocity u);
  static VelocityField per_node(std::vector<Velocity> table);
  static VelocityField time_indexed(std::vector<std::vector<Velocity>> tables);
  // Columns ix, iy, ux, uy; every node of grid must appear exactly once.
  static VelocityField from_csv(std::istream& in, const GridSpec& grid);
  static VelocityField from_csv_file(const std::string& path, const GridSpec& grid);

  Mode mode() const { return mode_; }
  bool is_time_dependent() const { return mode_ == Mode::time_indexed; }
  // Steps past the last table reuse the last table.
  Velocity at(std::size_t node, std::size_t step = 0) const;
  std::size_t table_count() const;
  // Validates that tables cover n nodes and entries are finite.
  void validate(std::size_t n) const;

 private:
  Mode mode_ = Mode::uniform;
  Velocity u_;
  std::vector<std::vector<Velocity>> tables_;
};

struct Equilibrium {
  std::vector<double> f;
  bool negative = false;
};

Equilibrium equilibrium(double phi, Velocity u, const VelocitySet& vs, const GridSpec& grid);

double moment_phi(const std::vector<double>& f);

ops::Operator shift_operator(std::size_t n);
ops::Operator streaming_permutation(const VelocitySet& vs, const GridSpec& grid, std::size_t i);

// Destination node of node j under direction i.
std::size_t stream_target(const VelocitySet& vs, const GridSpec& grid, std::size_t i,
                          std::size_t j);

struct LowMachReport {
  bool holds = true;
  double max_abs_ux = 0.0;
  double max_abs_uy = 0.0;
  double limit = 0.0;
  // Set for 1D sets, where the bound is assumed rather than stated.
  bool assumed_bound = false;
};

LowMachReport check_low_mach(const VelocityField& u, const GridSpec& grid,
                             const VelocitySet* vs = nullptr, std::size_t n_steps = 1);

struct DiffusionCoefficient {
  double value = 0.0;
  bool nonpositive = false;
};

double diffusion_coefficient(double tau_star, const GridSpec& grid);
DiffusionCoefficient diffusion_coefficient_checked(double tau_star, const GridSpec& grid);

}  // namespace lattice
}  // namespace qlbm
