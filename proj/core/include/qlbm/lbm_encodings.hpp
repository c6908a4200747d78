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
#include <stdexcept>
#include <string>
#include <vector>

#include "qlbm/block_encoding.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/marching.hpp"

// Encodings of the D2Q5 marching matrices. System registers:
//   8-block ops:  [b (3 qubits)] ⊗ [node (n qubits)], block b = direction,
//                 b = 5 carries φ, b = 6, 7 are padding.
//   M_e, M_ω:     [flag] ⊗ [b] ⊗ [node]. ψ lives in flag = 0, blocks 0..5.
// A 1D problem is the D2Q5 model on an N×1 grid.
namespace qlbm {
namespace be {

class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LbmContext {
  lattice::VelocityField u;
  lattice::VelocitySet vs;
  lattice::GridSpec grid;
  double tau_star = 1.0;
  std::size_t step = 0;
};

// τ* ≥ 1, D2Q5, and wᵢ|1 + cᵢ·uⱼ/c_s²| ≤ 1 at every node.
void check_lbm_preconditions(const LbmContext& ctx);

// k·(L ⊗ I) with L = |0⟩⟨0|⊗I₄ + |1⟩⟨1|⊗E, one flag ancilla.
BlockEncoding be_Ae1(double k, const lattice::GridSpec& grid);
// k·Σᵢ E_{i5} ⊗ Aᵢ as a five-term LCU with α = 5.
BlockEncoding be_Ae2(const LbmContext& ctx, double k = 1.0);
// (1−1/τ*)A_e^(1) + (1/τ*)A_e^(2), α = 6.
BlockEncoding be_Ae(const LbmContext& ctx);
BlockEncoding be_Pe(const lattice::VelocitySet& vs, const lattice::GridSpec& grid);
// Ẽ_e on the 3-qubit block register, α = 3.
BlockEncoding be_EI_tilde();
// Ẽ_e ⊗ I_N.
BlockEncoding be_EI(const lattice::GridSpec& grid);
BlockEncoding be_PeAe(const LbmContext& ctx);
// [M_e | 0] on [flag][b][node], α = 18√2.
BlockEncoding be_Me(const LbmContext& ctx);
// Encodes M_ω embedded in the leading (Q+1)N corner, α = α_M.
BlockEncoding be_Momega(const LbmContext& ctx, double omega);

double alpha_M(double omega);
std::size_t n_M_bound(std::size_t n);

// Independent references assembled from the marching operators.
struct LbmReferences {
  ops::Operator Ae;      // A in 8N × 8N
  ops::Operator Pe;      // P in 8N × 8N
  ops::Operator EI;      // E_I in 8N × 8N
  ops::Operator PeAe;    // PA in 8N × 8N
  ops::Operator Me;      // [M_e | 0] in 16N × 16N
  ops::Operator Momega;  // M_ω in 16N × 16N
};

LbmReferences lbm_references(const LbmContext& ctx, double omega);

}  // namespace be
}  // namespace qlbm
