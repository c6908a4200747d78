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

#include "qlbm/lbm_encodings.hpp"

#include <algorithm>
#include <cmath>

namespace qlbm {
namespace be {

namespace {

constexpr std::size_t kBlocks = 8;
constexpr std::size_t kPhiBlock = 5;

bool keep_block(std::size_t b) { return b < kPhiBlock; }

void require_d2q5(const lattice::VelocitySet& vs) {
  if (vs.q() != 5 || vs.d != 2)
    throw PreconditionError("the encoding tower is defined for D2Q5 only (got " + vs.name + ")");
}

// Flips the ancilla (most significant) when the 3-qubit block index is ≥ 5.
std::vector<std::size_t> flag_high_blocks() {
  std::vector<std::size_t> map(2 * kBlocks);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < kBlocks; ++b)
      map[a * kBlocks + b] = ((keep_block(b) ? a : a ^ 1u) * kBlocks) + b;
  return map;
}

}  // namespace

double alpha_M(double omega) {
  if (!(omega > 0.0 && omega < 1.0))
    throw std::invalid_argument("alpha_M: omega outside (0, 1)");
  return 18.0 * std::sqrt(2.0) * std::max(omega, 1.0 - omega) / std::min(omega, 1.0 - omega);
}

std::size_t n_M_bound(std::size_t n) { return 3 * n + 18; }

void check_lbm_preconditions(const LbmContext& ctx) {
  require_d2q5(ctx.vs);
  if (ctx.tau_star < 1.0 - 1e-12)
    throw PreconditionError("tau_star = " + std::to_string(ctx.tau_star) +
                            " < 1; the encoding needs both (1 - 1/tau*) and 1/tau* in [0, 1]");
  for (std::size_t i = 0; i < ctx.vs.q(); ++i) {
    const auto a = marching::a_diagonal(ctx.u, ctx.step, ctx.vs, ctx.grid, i);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (std::abs(a[j]) > 1.0 + 1e-12) {
        throw PreconditionError("weight condition fails at node " + std::to_string(j) +
                                ", direction " + std::to_string(i) + ": |w_i(1 + c_i.u/cs^2)| = " +
                                std::to_string(std::abs(a[j])));
      }
    }
  }
}

BlockEncoding be_Ae1(double k, const lattice::GridSpec& grid) {
  if (k < 0.0 || k > 1.0 + 1e-12)
    throw std::domain_error("be_Ae1: scale " + std::to_string(k) + " outside [0, 1]");
  const auto flag = ops::materialize(ops::permutation(flag_high_blocks()));
  CMatrix rot = CMatrix::Identity(2 * kBlocks, 2 * kBlocks);
  if (k != 1.0) {
    const double s = std::sqrt(std::max(0.0, 1.0 - k * k));
    for (std::size_t b = 0; b < kBlocks; ++b) {
      if (!keep_block(b)) continue;
      const auto i0 = static_cast<Eigen::Index>(b);
      const auto i1 = static_cast<Eigen::Index>(kBlocks + b);
      rot(i0, i0) = k;
      rot(i0, i1) = s;
      rot(i1, i0) = s;
      rot(i1, i1) = -k;
    }
  }
  std::vector<double> l(kBlocks, 0.0);
  for (std::size_t b = 0; b < kBlocks; ++b) l[b] = keep_block(b) ? k : 0.0;
  BlockEncoding be;
  be.U = ops::tensor(ops::dense(rot * flag), ops::identity(grid.n()));
  be.alpha = 1.0;
  be.m = 1;
  be.system_dim = kBlocks * grid.n();
  be.target = ops::tensor(ops::diagonal(l), ops::identity(grid.n()));
  return be_relabel(be, "A_e^(1)", 1.0, 1);
}

BlockEncoding be_Ae2(const LbmContext& ctx, double k) {
  require_d2q5(ctx.vs);
  if (k < 0.0 || k > 1.0 + 1e-12)
    throw std::domain_error("be_Ae2: scale " + std::to_string(k) + " outside [0, 1]");
  std::vector<BlockEncoding> terms;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto a = marching::a_diagonal(ctx.u, ctx.step, ctx.vs, ctx.grid, i);
    CVector d(static_cast<Eigen::Index>(a.size()));
    for (std::size_t j = 0; j < a.size(); ++j) d[static_cast<Eigen::Index>(j)] = a[j];
    terms.push_back(be_tensor(be_Eij(i, kPhiBlock, 3),
                              be_diagonal(d, 1.0, "A" + std::to_string(i))));
  }
  const double r5 = 1.0 / std::sqrt(5.0);
  CVector c = CVector::Zero(kBlocks);
  CVector d = CVector::Zero(kBlocks);
  CVector y = CVector::Zero(kBlocks);
  for (int j = 0; j < 5; ++j) {
    c[j] = r5;
    d[j] = k * r5;
    y[j] = k;
  }
  // The unused slot 5 absorbs the leftover amplitude of P_R when k < 1.
  d[5] = std::sqrt(std::max(0.0, 1.0 - k * k));
  const StatePrepPair prep = make_state_prep_pair(c, d, 5.0, y);
  BlockEncoding be = be_lcu(y, terms, prep);
  return be_relabel(be, "A_e^(2)", 5.0, ctx.grid.qubits() + 5);
}

BlockEncoding be_Ae(const LbmContext& ctx) {
  check_lbm_preconditions(ctx);
  const double keep = 1.0 - 1.0 / ctx.tau_star;
  const double relax = 1.0 / ctx.tau_star;
  BlockEncoding be = be_sum(be_Ae1(std::max(0.0, keep), ctx.grid), be_Ae2(ctx, relax), 1.0, 1.0);
  return be_relabel(be, "A_e", 6.0, ctx.grid.qubits() + 6);
}

BlockEncoding be_Pe(const lattice::VelocitySet& vs, const lattice::GridSpec& grid) {
  require_d2q5(vs);
  const std::size_t n = grid.n();
  std::vector<ops::Operator> sel;
  std::vector<ops::Operator> tgt;
  for (std::size_t b = 0; b < kBlocks; ++b) {
    const std::size_t i = std::min<std::size_t>(b, 4);
    sel.push_back(lattice::streaming_permutation(vs, grid, i));
    tgt.push_back(keep_block(b) ? sel.back() : ops::zero(n, n));
  }
  BlockEncoding be;
  be.U = ops::product({ops::tensor(ops::permutation(flag_high_blocks()), ops::identity(n)),
                       ops::tensor(ops::identity(2), ops::direct_sum(sel))});
  be.alpha = 1.0;
  be.m = 1;
  be.system_dim = kBlocks * n;
  be.target = ops::direct_sum(tgt);
  return be_relabel(be, "P_e", 1.0, 1);
}

BlockEncoding be_EI_tilde() {
  const BlockEncoding t1 = be_tensor(be_Eij(0, 0, 1), be_D());
  const BlockEncoding t2 = be_tensor(be_Eij(0, 1, 1), be_E());
  return be_relabel(be_sum(t1, t2, 1.0, 1.0), "E~_e", 3.0, 3);
}

BlockEncoding be_EI(const lattice::GridSpec& grid) {
  return be_relabel(be_tensor(be_EI_tilde(), be_identity(grid.n())), "(E_I)_e", 3.0, 3);
}

BlockEncoding be_PeAe(const LbmContext& ctx) {
  return be_relabel(be_product(be_Pe(ctx.vs, ctx.grid), be_Ae(ctx)), "P_eA_e", 6.0,
                    ctx.grid.qubits() + 7);
}

BlockEncoding be_Me(const LbmContext& ctx) {
  const std::size_t n8 = kBlocks * ctx.grid.n();
  const BlockEncoding pa = be_tensor(be_identity(2), be_PeAe(ctx));
  const BlockEncoding ei = be_EI(ctx.grid);
  const BlockEncoding third = be_pad_ancillas(be_rescale(be_scalar(1.0 / 3.0, n8), 3.0), ei.m);
  const BlockEncoding ctrl = be_block_diagonal({third, ei}, "I_e ⊕ (E_I)_e");
  const BlockEncoding h = be_unitary(ops::tensor(ops::dense(hadamard()), ops::identity(n8)), "H");
  // Zeroes inputs with flag = 1 so only the flag-0 half of the input is read.
  const BlockEncoding valid = be_tensor(be_Eij(0, 0, 1), be_identity(n8));
  const BlockEncoding raw = be_product(be_product(ctrl, pa), be_product(h, valid));
  // H contributes 1/√2 to every amplitude.
  return be_relabel(be_rescale(raw, std::sqrt(2.0)), "M_e", 18.0 * std::sqrt(2.0),
                    ctx.grid.qubits() + 10);
}

BlockEncoding be_Momega(const LbmContext& ctx, double omega) {
  if (!(omega > 0.0 && omega < 1.0))
    throw std::invalid_argument("be_Momega: omega = " + std::to_string(omega) +
                                " outside (0, 1)");
  const BlockEncoding me = be_Me(ctx);
  const std::size_t n = ctx.grid.n();
  const std::size_t n8 = kBlocks * n;
  const std::size_t dim = 2 * n8;
  // Move the φ output from (flag 1, block 0) to (flag 0, block 5).
  std::vector<std::size_t> map(dim);
  for (std::size_t k = 0; k < dim; ++k) map[k] = k;
  for (std::size_t j = 0; j < n; ++j) std::swap(map[n8 + j], map[kPhiBlock * n + j]);
  const BlockEncoding relayout = be_unitary(ops::permutation(map), "relayout");

  const double hi = std::max(omega, 1.0 - omega);
  const double lo = std::min(omega, 1.0 - omega);
  CVector dw(static_cast<Eigen::Index>(dim));
  CVector dinv(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const bool phi = k >= kPhiBlock * n && k < (kPhiBlock + 1) * n;
    dw[static_cast<Eigen::Index>(k)] = phi ? 1.0 - omega : omega;
    dinv[static_cast<Eigen::Index>(k)] = phi ? 1.0 / (1.0 - omega) : 1.0 / omega;
  }
  const BlockEncoding d = be_diagonal(dw, hi, "D_omega");
  const BlockEncoding di = be_diagonal(dinv, 1.0 / lo, "D_omega^-1");
  const BlockEncoding mw = be_product(be_product(d, relayout), be_product(me, di));
  return be_relabel(mw, "M_omega", alpha_M(omega), n_M_bound(ctx.grid.qubits()));
}

LbmReferences lbm_references(const LbmContext& ctx, double omega) {
  const auto set =
      marching::build_M(ctx.u, ctx.tau_star, omega, ctx.vs, ctx.grid, ctx.step);
  const std::size_t n8 = kBlocks * ctx.grid.n();
  const std::size_t n16 = 2 * n8;
  LbmReferences r;
  r.Ae = ops::embedding(set.A, n8, n8, 0, 0);
  r.Pe = ops::embedding(set.P, n8, n8, 0, 0);
  r.EI = ops::embedding(set.E_I, n8, n8, 0, 0);
  r.PeAe = ops::embedding(set.M1, n8, n8, 0, 0);
  r.Me = ops::sum({ops::embedding(set.M1, n16, n16, 0, 0),
                   ops::embedding(set.M2, n16, n16, n8, 0)});
  r.Momega = ops::embedding(set.M_omega, n16, n16, 0, 0);
  return r;
}

}  // namespace be
}  // namespace qlbm
