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

#include "qlbm/marching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlbm {
namespace marching {

namespace {

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < 1.0))
    throw std::invalid_argument("omega = " + std::to_string(omega) + " is outside (0, 1)");
}

}  // namespace

MarchingState MarchingState::pack(const lbm::DistributionField& field, double omega) {
  check_omega(omega);
  MarchingState s;
  s.omega = omega;
  s.step = field.step;
  s.grid = field.grid;
  s.vs = field.vs;
  const std::size_t n = field.grid.n();
  const std::size_t q = field.vs.q();
  s.psi = CVector::Zero(static_cast<Eigen::Index>((q + 1) * n));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.psi[static_cast<Eigen::Index>(i * n + j)] =
          omega * field.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  for (std::size_t j = 0; j < n; ++j)
    s.psi[static_cast<Eigen::Index>(q * n + j)] =
        (1.0 - omega) * field.f.col(static_cast<Eigen::Index>(j)).sum();
  return s;
}

lbm::DistributionField MarchingState::unpack() const {
  lbm::DistributionField f;
  f.grid = grid;
  f.vs = vs;
  f.step = step;
  const std::size_t n = grid.n();
  const std::size_t q = vs.q();
  f.f.resize(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < n; ++j)
      f.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          psi[static_cast<Eigen::Index>(i * n + j)].real() / omega;
  return f;
}

std::vector<double> MarchingState::phi() const {
  const std::size_t n = grid.n();
  const std::size_t q = vs.q();
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j)
    p[j] = psi[static_cast<Eigen::Index>(q * n + j)].real() / (1.0 - omega);
  return p;
}

std::vector<double> a_diagonal(const VelocityField& u, std::size_t step, const VelocitySet& vs,
                               const GridSpec& grid, std::size_t i) {
  if (i >= vs.q())
    throw std::invalid_argument("build_Ai: direction " + std::to_string(i) + " >= Q");
  std::vector<double> d(grid.n());
  const double c = grid.c();
  const double cs2 = grid.cs2();
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const auto v = u.at(j, step);
    const double cu = c * vs.e[i][0] * (c * v.x) + c * vs.e[i][1] * (c * v.y);
    d[j] = vs.w[i] * (1.0 + cu / cs2);
  }
  return d;
}

ops::Operator build_Ai(const VelocityField& u, std::size_t step, const VelocitySet& vs,
                       const GridSpec& grid, std::size_t i) {
  return ops::diagonal(a_diagonal(u, step, vs, grid, i));
}

MarchingOperatorSet build_M(const VelocityField& u, double tau_star, double omega,
                            const VelocitySet& vs, const GridSpec& grid, std::size_t step) {
  if (!(tau_star > 0.0)) throw std::invalid_argument("build_M: tau_star must be positive");
  check_omega(omega);
  MarchingOperatorSet s;
  s.tau_star = tau_star;
  s.omega = omega;
  s.step = step;
  s.grid = grid;
  s.vs = vs;
  const std::size_t n = grid.n();
  const std::size_t q = vs.q();
  const std::size_t qn = q * n;
  const std::size_t dim = qn + n;

  std::vector<ops::Operator> perms;
  for (std::size_t i = 0; i < q; ++i) {
    s.a_entries.push_back(a_diagonal(u, step, vs, grid, i));
    s.A_i.push_back(ops::diagonal(s.a_entries.back()));
    perms.push_back(lattice::streaming_permutation(vs, grid, i));
  }
  const auto qi = static_cast<Eigen::Index>(q);
  s.B = ops::product({ops::direct_sum(s.A_i),
                      ops::tensor(ops::dense(CMatrix::Ones(qi, 1)), ops::identity(n))});
  s.A = ops::sum({ops::embedding(ops::identity(qn), qn, dim, 0, 0),
                  ops::embedding(s.B, qn, dim, 0, qn)},
                 {1.0 - 1.0 / tau_star, 1.0 / tau_star});
  s.P = ops::direct_sum(perms);
  s.E_I = ops::tensor(ops::dense(CMatrix::Ones(1, qi)), ops::identity(n));
  s.M1 = ops::product({s.P, s.A});
  s.M2 = ops::product({s.E_I, s.M1});
  const ops::Operator stack = ops::sum(
      {ops::embedding(ops::identity(qn), dim, qn, 0, 0), ops::embedding(s.E_I, dim, qn, qn, 0)});
  s.M = ops::product({stack, s.M1});

  CVector d(static_cast<Eigen::Index>(dim));
  CVector dinv(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const double v = k < qn ? omega : 1.0 - omega;
    d[static_cast<Eigen::Index>(k)] = v;
    dinv[static_cast<Eigen::Index>(k)] = 1.0 / v;
  }
  s.D_omega = ops::diagonal(d);
  s.D_omega_inv = ops::diagonal(dinv);
  s.M_omega = ops::product({s.D_omega, stack, s.P, s.A, s.D_omega_inv});
  return s;
}

MarchingState step(const MarchingState& state, const MarchingOperatorSet& ops) {
  if (static_cast<std::size_t>(state.psi.size()) != ops.M_omega.cols()) {
    throw std::invalid_argument("step: state has length " + std::to_string(state.psi.size()) +
                                ", operator expects " + std::to_string(ops.M_omega.cols()));
  }
  if (state.omega != ops.omega)
    throw std::invalid_argument("step: state and operator use different omega");
  MarchingState out = state;
  out.psi = ops.M_omega.apply(state.psi);
  out.step = state.step + 1;
  return out;
}

Marcher::Marcher(VelocityField u, double tau_star, double omega, VelocitySet vs, GridSpec grid)
    : u_(std::move(u)), tau_(tau_star), omega_(omega), vs_(std::move(vs)), grid_(grid) {
  check_omega(omega_);
}

const MarchingOperatorSet& Marcher::ops_for(std::size_t step) {
  const std::size_t key = u_.is_time_dependent() ? step : 0;
  if (!cached_ || cached_->step != key)
    cached_ = build_M(u_, tau_, omega_, vs_, grid_, key);
  return *cached_;
}

MarchingState Marcher::advance(const MarchingState& state) {
  return marching::step(state, ops_for(state.step));
}

std::vector<MarchingState> Marcher::run(const MarchingState& state, std::size_t steps) {
  std::vector<MarchingState> out;
  out.reserve(steps + 1);
  out.push_back(state);
  for (std::size_t k = 0; k < steps; ++k) out.push_back(advance(out.back()));
  return out;
}

std::string to_string(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::holds: return "holds";
    case TheoremStatus::violated: return "violated";
    case TheoremStatus::not_applicable: return "not-applicable";
  }
  return "unknown";
}

NormBoundReport verify_norm_bound(const MarchingOperatorSet& ops, const VelocityField& u,
                                  double tol, const ops::NormOptions& opts) {
  NormBoundReport rep;
  ops::NormOptions o = opts;
  o.tol = std::min(o.tol, tol);
  rep.detail = ops::spectral_norm(ops.M_omega, o);
  rep.norm = rep.detail.spectral_norm_estimate;
  rep.bound_holds = rep.norm <= 1.0 + tol;
  rep.low_mach_holds = lattice::check_low_mach(u, ops.grid, &ops.vs, ops.step + 1).holds;
  rep.coupling_holds =
      std::abs(ops.tau_star - 1.0 / (1.0 - ops.omega)) <= 1e-12 * std::max(1.0, ops.tau_star);
  const std::size_t n = ops.grid.n();
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (const auto& a : ops.a_entries) {
      col += std::abs(a[j]);
      rep.B_norm_inf = std::max(rep.B_norm_inf, std::abs(a[j]));
    }
    rep.B_norm1 = std::max(rep.B_norm1, col);
  }
  if (!(rep.low_mach_holds && rep.coupling_holds))
    rep.theorem = TheoremStatus::not_applicable;
  else
    rep.theorem = rep.bound_holds ? TheoremStatus::holds : TheoremStatus::violated;
  return rep;
}

namespace {

lattice::Rational a_exact(const VelocitySet& vs, std::size_t i,
                          const std::array<lattice::Rational, 2>& u) {
  // In lattice units cᵢ·u/c_s² = 3 eᵢ·u.
  const lattice::Rational dot = lattice::Rational(vs.e[i][0]) * u[0] +
                                lattice::Rational(vs.e[i][1]) * u[1];
  return vs.w_exact[i] * (lattice::Rational(1) + lattice::Rational(3) * dot);
}

}  // namespace

lattice::Rational exact_B_norm1(const std::vector<std::array<lattice::Rational, 2>>& u,
                                const VelocitySet& vs) {
  lattice::Rational best(0);
  for (const auto& uj : u) {
    lattice::Rational col(0);
    for (std::size_t i = 0; i < vs.q(); ++i) col += boost::abs(a_exact(vs, i, uj));
    best = std::max(best, col);
  }
  return best;
}

lattice::Rational exact_B_norm_inf(const std::vector<std::array<lattice::Rational, 2>>& u,
                                   const VelocitySet& vs) {
  lattice::Rational best(0);
  for (const auto& uj : u)
    for (std::size_t i = 0; i < vs.q(); ++i) best = std::max(best, boost::abs(a_exact(vs, i, uj)));
  return best;
}

double coupled_omega(double tau_star) {
  if (!(tau_star > 1.0))
    throw std::invalid_argument("coupled_omega: tau_star = " + std::to_string(tau_star) +
                                " must exceed 1 for omega in (0, 1)");
  return 1.0 - 1.0 / tau_star;
}

}  // namespace marching
}  // namespace qlbm
