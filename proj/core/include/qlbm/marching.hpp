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
#include <optional>
#include <string>
#include <vector>

#include "qlbm/classical_lbm.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/structured_ops.hpp"

namespace qlbm {
namespace marching {

using lattice::GridSpec;
using lattice::VelocityField;
using lattice::VelocitySet;

// ψ = [ω f₀; …; ω f_{Q−1}; (1−ω) φ], each block of length N.
struct MarchingState {
  CVector psi;
  double omega = 0.5;
  std::size_t step = 0;
  GridSpec grid;
  VelocitySet vs;

  static MarchingState pack(const lbm::DistributionField& field, double omega);
  lbm::DistributionField unpack() const;
  // The φ block divided by (1−ω).
  std::vector<double> phi() const;
  std::size_t block_dim() const { return (vs.q() + 1) * grid.n(); }
};

struct MarchingOperatorSet {
  std::vector<ops::Operator> A_i;
  // a_entries[i][j] = wᵢ(1 + cᵢ·uⱼ/c_s²).
  std::vector<std::vector<double>> a_entries;
  ops::Operator B;      // [A₀; …; A_{Q−1}], QN×N
  ops::Operator A;      // QN×(Q+1)N
  ops::Operator P;      // direct sum of Pᵢ
  ops::Operator E_I;    // [I … I], N×QN
  ops::Operator M1;     // PA
  ops::Operator M2;     // E_I PA
  ops::Operator M;      // [M1; M2]
  ops::Operator D_omega;
  ops::Operator D_omega_inv;
  ops::Operator M_omega;
  double tau_star = 1.0;
  double omega = 0.5;
  std::size_t step = 0;
  GridSpec grid;
  VelocitySet vs;

  std::size_t block_dim() const { return (vs.q() + 1) * grid.n(); }
};

std::vector<double> a_diagonal(const VelocityField& u, std::size_t step, const VelocitySet& vs,
                               const GridSpec& grid, std::size_t i);
ops::Operator build_Ai(const VelocityField& u, std::size_t step, const VelocitySet& vs,
                       const GridSpec& grid, std::size_t i);

MarchingOperatorSet build_M(const VelocityField& u, double tau_star, double omega,
                            const VelocitySet& vs, const GridSpec& grid, std::size_t step = 0);

MarchingState step(const MarchingState& state, const MarchingOperatorSet& ops);

// Rebuilds the operator set per step for time-indexed fields, reuses it otherwise.
class Marcher {
 public:
  Marcher(VelocityField u, double tau_star, double omega, VelocitySet vs, GridSpec grid);

  const MarchingOperatorSet& ops_for(std::size_t step);
  MarchingState advance(const MarchingState& state);
  std::vector<MarchingState> run(const MarchingState& state, std::size_t steps);

 private:
  VelocityField u_;
  double tau_;
  double omega_;
  VelocitySet vs_;
  GridSpec grid_;
  std::optional<MarchingOperatorSet> cached_;
};

enum class TheoremStatus { holds, violated, not_applicable };
std::string to_string(TheoremStatus s);

struct NormBoundReport {
  double norm = 0.0;
  bool bound_holds = false;
  bool low_mach_holds = false;
  bool coupling_holds = false;
  TheoremStatus theorem = TheoremStatus::not_applicable;
  double B_norm1 = 0.0;
  double B_norm_inf = 0.0;
  ops::OperatorNormReport detail;
};

NormBoundReport verify_norm_bound(const MarchingOperatorSet& ops, const VelocityField& u,
                                  double tol, const ops::NormOptions& opts = {});

// Exact max column sum of |B| for rational velocities in lattice units.
lattice::Rational exact_B_norm1(const std::vector<std::array<lattice::Rational, 2>>& u,
                                const VelocitySet& vs);
lattice::Rational exact_B_norm_inf(const std::vector<std::array<lattice::Rational, 2>>& u,
                                   const VelocitySet& vs);

// ω paired with τ* by τ* = 1/(1−ω).
double coupled_omega(double tau_star);

}  // namespace marching
}  // namespace qlbm
