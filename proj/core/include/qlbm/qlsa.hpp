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
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlbm/block_encoding.hpp"
#include "qlbm/dilation.hpp"
#include "qlbm/structured_ops.hpp"

// The whole trajectory as one block lower-bidiagonal system L Ψ = F.
namespace qlbm {
namespace qlsa {

struct GlobalSystem {
  // Step matrices B_0..B_{N_t-1}.
  std::vector<ops::Operator> B;
  CVector psi0;
  std::size_t n_t = 0;
  bool padded = false;
  std::size_t block_dim = 0;

  // N_t + 1, or 2N_t + 1 when padded.
  std::size_t total_blocks() const { return padded ? 2 * n_t + 1 : n_t + 1; }
  std::size_t dim() const { return total_blocks() * block_dim; }
  // Subdiagonal block k couples block k to block k + 1: B_k, then I for copies.
  const ops::Operator& subdiagonal(std::size_t k) const;

  ops::Operator L() const;
  // Exact inverse applied by forward substitution (adjoint by backward).
  ops::Operator L_inverse() const;
  CVector F() const;

  // Identity on one block, the copy-equation subdiagonal.
  ops::Operator copy_block;
};

// Padding appends N_t copy equations ψ^{n+1} − ψ^n = 0, n = N_t..2N_t−1.
GlobalSystem assemble(std::vector<ops::Operator> B, const CVector& psi0, bool pad = false);

struct SolveResult {
  std::vector<CVector> blocks;
  // ‖LΨ − F‖ / ‖F‖.
  double residual = 0.0;
  CVector stacked() const;
};

SolveResult solve_forward(const GlobalSystem& sys);

// Block layout of fields on a periodic nx×ny grid: index = c·nx·ny + iy·nx + ix.
struct PeriodicLayout {
  std::size_t components = 0;
  std::size_t nx = 0;
  std::size_t ny = 1;
};

struct SingularBoundOptions {
  double tol = 1e-9;
  std::size_t dense_threshold = ops::kDenseThreshold;
  ops::NormOptions norm;
  // Also estimate max‖B_n‖ to check the contraction premise.
  bool check_premise = true;
  // When every B_n commutes with grid translations, plane waves split L into
  // one small block per wavenumber and the SVD is exact. Checked first; falls
  // back to power iteration when a block is not translation invariant.
  std::optional<PeriodicLayout> periodic;
};

struct SingularBoundReport {
  std::size_t n_t = 0;
  std::size_t block_dim = 0;
  // Number of subdiagonal blocks; equals N_t when unpadded.
  std::size_t chain_length = 0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double bound_max = 2.0;
  double bound_min = 0.0;
  double inverse_norm = 0.0;
  double inverse_bound = 0.0;
  double max_B_norm = 0.0;
  bool premise_holds = false;
  bool pass_max = false;
  bool pass_min = false;
  bool pass_inverse = false;
  bool exact_svd = false;
  bool periodic_reduction = false;
  bool pass() const { return pass_max && pass_min; }
};

SingularBoundReport singular_bounds(const GlobalSystem& sys, const SingularBoundOptions& opts = {});

// Fourier symbol of a translation-invariant operator: entry k = kx + nx·ky is
// the components×components matrix acting on e_c ⊗ exp(i k·x). Empty when a
// random probe shows the operator does not commute with translations.
std::vector<CMatrix> periodic_symbol(const ops::Operator& op, const PeriodicLayout& layout,
                                     double tol = 1e-12, std::uint64_t seed = 1);

// N_t, block_dim, sigma_max, sigma_min, bound_max, bound_min, pass
void write_bounds_csv(std::ostream& out, const std::vector<SingularBoundReport>& rows);

// Σ_k |k⟩⟨k| ⊗ B_k/α_B. All encodings share α, m and system_dim.
be::BlockEncoding hamt_oracle(const std::vector<be::BlockEncoding>& encodings);
// O(α_B + 1) encoding constant of L, constant 1.
double hamt_L_constant(double alpha_B);

// Per-solve α_M·(N_t+1)·ln(N_t‖ψ(t₀)‖/ε'), g = norm_ratio, total = g·per-solve.
dilation::ComplexityReport qlsa_complexity(std::size_t n_t, double epsilon_prime,
                                           double psi0_norm, double norm_ratio, double omega);

// ‖Ψ‖/((N_t+1)‖ψ(T)‖) from a solved system, as written.
double repetitions_paper(const SolveResult& sol, std::size_t n_t);
// ‖Ψ‖/(√(N_t+1)‖ψ(T)‖), the inverse success amplitude for a copy-padded solve.
double repetitions_amplitude(const SolveResult& sol, std::size_t n_t);

}  // namespace qlsa
}  // namespace qlbm
