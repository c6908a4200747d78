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

#include <Eigen/Dense>

#include "qlbm/lattice.hpp"

namespace qlbm {
namespace lbm {

using lattice::GridSpec;
using lattice::VelocityField;
using lattice::VelocitySet;

// f(i, j) is the population of direction i at node j.
struct DistributionField {
  Eigen::MatrixXd f;
  GridSpec grid;
  VelocitySet vs;
  std::size_t step = 0;

  std::vector<double> phi() const;
  double mass() const;
};

enum class Regime { unstable, over_relaxation, full_relaxation, under_relaxation };
std::string to_string(Regime r);
Regime relaxation_regime(double tau_star);

DistributionField init_equilibrium(const std::vector<double>& phi, const VelocityField& u,
                                   const VelocitySet& vs, const GridSpec& grid);

// Uses the velocity at state.step.
DistributionField collide(const DistributionField& state, const VelocityField& u,
                          double tau_star);
DistributionField stream(const DistributionField& state);

struct Trajectory {
  std::vector<DistributionField> states;
  // phi[k] is the moment field after k steps; phi[0] is the input.
  std::vector<std::vector<double>> phi;
  Regime regime = Regime::full_relaxation;
};

Trajectory run(const DistributionField& state, const VelocityField& u, double tau_star,
               std::size_t steps, bool keep_states = true);

// Columns step, ix, iy, phi.
void write_trajectory_csv(std::ostream& out, const GridSpec& grid,
                          const std::vector<std::vector<double>>& phi,
                          std::size_t first_step = 0);

}  // namespace lbm
}  // namespace qlbm
