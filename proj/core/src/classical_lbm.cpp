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

#include "qlbm/classical_lbm.hpp"

#include <stdexcept>

#include "qlbm/csv.hpp"

namespace qlbm {
namespace lbm {

std::vector<double> DistributionField::phi() const {
  std::vector<double> p(static_cast<std::size_t>(f.cols()), 0.0);
  for (Eigen::Index j = 0; j < f.cols(); ++j) p[static_cast<std::size_t>(j)] = f.col(j).sum();
  return p;
}

double DistributionField::mass() const { return f.sum(); }

std::string to_string(Regime r) {
  switch (r) {
    case Regime::unstable: return "unstable";
    case Regime::over_relaxation: return "over-relaxation";
    case Regime::full_relaxation: return "full-relaxation";
    case Regime::under_relaxation: return "under-relaxation";
  }
  return "unknown";
}

Regime relaxation_regime(double tau_star) {
  if (tau_star <= 0.5) return Regime::unstable;
  if (tau_star < 1.0) return Regime::over_relaxation;
  if (tau_star == 1.0) return Regime::full_relaxation;
  return Regime::under_relaxation;
}

DistributionField init_equilibrium(const std::vector<double>& phi, const VelocityField& u,
                                   const VelocitySet& vs, const GridSpec& grid) {
  if (phi.size() != grid.n()) {
    throw std::invalid_argument("init_equilibrium: phi has " + std::to_string(phi.size()) +
                                " entries, grid has " + std::to_string(grid.n()) + " nodes");
  }
  DistributionField s;
  s.grid = grid;
  s.vs = vs;
  s.step = 0;
  s.f.resize(static_cast<Eigen::Index>(vs.q()), static_cast<Eigen::Index>(grid.n()));
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const auto eq = lattice::equilibrium(phi[j], u.at(j, 0), vs, grid);
    for (std::size_t i = 0; i < vs.q(); ++i)
      s.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eq.f[i];
  }
  return s;
}

DistributionField collide(const DistributionField& state, const VelocityField& u,
                          double tau_star) {
  if (!(tau_star > 0.0)) throw std::invalid_argument("collide: tau_star must be positive");
  DistributionField out = state;
  const double keep = 1.0 - 1.0 / tau_star;
  const double relax = 1.0 / tau_star;
  for (Eigen::Index j = 0; j < state.f.cols(); ++j) {
    const double phi = state.f.col(j).sum();
    const auto eq = lattice::equilibrium(phi, u.at(static_cast<std::size_t>(j), state.step),
                                         state.vs, state.grid);
    for (Eigen::Index i = 0; i < state.f.rows(); ++i)
      out.f(i, j) = keep * state.f(i, j) + relax * eq.f[static_cast<std::size_t>(i)];
  }
  return out;
}

DistributionField stream(const DistributionField& state) {
  DistributionField out = state;
  for (std::size_t i = 0; i < state.vs.q(); ++i) {
    for (std::size_t j = 0; j < state.grid.n(); ++j) {
      const std::size_t dst = lattice::stream_target(state.vs, state.grid, i, j);
      out.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(dst)) =
          state.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  out.step = state.step + 1;
  return out;
}

Trajectory run(const DistributionField& state, const VelocityField& u, double tau_star,
               std::size_t steps, bool keep_states) {
  if (!(tau_star > 0.0)) throw std::invalid_argument("run: tau_star must be positive");
  Trajectory t;
  t.regime = relaxation_regime(tau_star);
  DistributionField cur = state;
  if (keep_states) t.states.push_back(cur);
  t.phi.push_back(cur.phi());
  for (std::size_t k = 0; k < steps; ++k) {
    cur = stream(collide(cur, u, tau_star));
    if (keep_states) t.states.push_back(cur);
    t.phi.push_back(cur.phi());
  }
  if (!keep_states) t.states.push_back(cur);
  return t;
}

void write_trajectory_csv(std::ostream& out, const GridSpec& grid,
                          const std::vector<std::vector<double>>& phi, std::size_t first_step) {
  csv::Writer w(out);
  w.row({"step", "ix", "iy", "phi"});
  for (std::size_t k = 0; k < phi.size(); ++k) {
    for (std::size_t j = 0; j < phi[k].size(); ++j) {
      w.cell(first_step + k).cell(grid.ix(j)).cell(grid.iy(j)).cell(phi[k][j]);
      w.end_row();
    }
  }
}

}  // namespace lbm
}  // namespace qlbm
