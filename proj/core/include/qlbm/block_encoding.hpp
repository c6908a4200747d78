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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlbm/structured_ops.hpp"

namespace qlbm {
namespace be {

// Register layout: U acts on [ancilla (m qubits)] ⊗ [system], ancillas most
// significant. Π = ⟨0^m| ⊗ I therefore selects the first system_dim entries.
struct BlockEncoding {
  ops::Operator U;
  double alpha = 1.0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::size_t system_dim = 1;
  // The encoded matrix, padded to system_dim × system_dim.
  ops::Operator target;
  std::string label;
  std::optional<double> alpha_paper;
  std::optional<std::size_t> m_paper_bound;

  std::size_t dim() const { return (std::size_t{1} << m) * system_dim; }
};

// α Π U (|0^m⟩ ⊗ v).
CVector be_apply_block(const BlockEncoding& be, const CVector& v);
// α Π U Π† as a lazy operator.
ops::Operator be_block_operator(const BlockEncoding& be);
CMatrix be_extract(const BlockEncoding& be);

BlockEncoding be_unitary(const ops::Operator& U, std::string label);
BlockEncoding be_identity(std::size_t system_dim);
// Same circuit, α multiplied by factor, target scaled to match.
BlockEncoding be_rescale(const BlockEncoding& be, double factor, std::string label = {});
BlockEncoding be_relabel(BlockEncoding be, std::string label,
                         std::optional<double> alpha_paper = std::nullopt,
                         std::optional<std::size_t> m_paper_bound = std::nullopt);
// Adds unused ancillas (most significant) up to m_total.
BlockEncoding be_pad_ancillas(const BlockEncoding& be, std::size_t m_total);

// One-ancilla rotation encoding of diag(entries)/alpha.
BlockEncoding be_diagonal(const CVector& entries, double alpha = 1.0, std::string label = {});
// k·I with one ancilla, |k| ≤ 1.
BlockEncoding be_scalar(cplx k, std::size_t system_dim);
// Diagonal input uses the rotation encoding, anything else the dense unitary
// completion of A/s with s the row/column sparsity.
BlockEncoding be_sparse(const CMatrix& A, std::string label = {});
// Dense completion of A/alpha; dims are padded to a power of two.
BlockEncoding be_dense(const CMatrix& A, double alpha, std::string label = {});
BlockEncoding be_dense(const ops::Operator& A, double alpha, std::string label = {});

BlockEncoding be_product(const BlockEncoding& be1, const BlockEncoding& be2);
BlockEncoding be_tensor(const BlockEncoding& be1, const BlockEncoding& be2);
// Encodes c1·A1 + c2·A2 with α = |c1|α1 + |c2|α2 and one select qubit.
BlockEncoding be_sum(const BlockEncoding& be1, const BlockEncoding& be2, cplx c1, cplx c2);

struct StatePrepPair {
  CMatrix P_L;
  CMatrix P_R;
  double beta = 1.0;
  CVector y;

  std::size_t qubits() const;
  // Σⱼ |β c̄ⱼ dⱼ − yⱼ|.
  double delta() const;
};

// Unitary whose first column is v (‖v‖ = 1).
CMatrix unitary_with_first_column(const CVector& v);
// β = ‖y‖₁, y padded with zeros to a power of two.
StatePrepPair make_state_prep_pair(const CVector& y);
StatePrepPair make_state_prep_pair(const CVector& c, const CVector& d, double beta,
                                   const CVector& y);

// Linear combination of unitaries. Operands must share α, m and system_dim; missing select slots
// are filled with identities.
BlockEncoding be_lcu(const CVector& y, const std::vector<BlockEncoding>& encodings,
                     const StatePrepPair& prep);

// Σₖ |k⟩⟨k| ⊗ Aₖ over a k register placed between the ancillas and the system.
// Operands share α, m and system_dim; padded slots carry zero blocks.
BlockEncoding be_block_diagonal(const std::vector<BlockEncoding>& encodings,
                                std::string label = {});

// |i⟩⟨j| on a width-qubit register.
BlockEncoding be_Eij(std::size_t i, std::size_t j, std::size_t width);
// diag(1, 0, 0, 0).
BlockEncoding be_E();
// (2, 1, 0) encoding of the 4×4 matrix with first row (1,1,1,1).
BlockEncoding be_D();
CMatrix hadamard();

struct EncodingCheck {
  std::string label;
  double alpha_reported = 0.0;
  double alpha_paper = 0.0;
  bool has_alpha_paper = false;
  std::size_t m_actual = 0;
  std::size_t m_paper_bound = 0;
  bool has_m_paper_bound = false;
  double unitarity_defect = 0.0;
  double block_error = 0.0;
  bool exhaustive_unitarity = false;
  bool exhaustive_block = false;
  bool alpha_matches = true;
  bool m_within_bound = true;
  bool pass = false;
};

struct VerifyOptions {
  double tol = 1e-10;
  // Relative tolerance on α against the paper constant.
  double alpha_rel_tol = 1e-14;
  std::size_t exhaustive_unitary_limit = std::size_t{1} << 13;
  std::size_t dense_block_limit = ops::kDenseThreshold;
  std::size_t probes = 64;
  std::uint64_t seed = 20240501;
};

// Compares against reference when given, otherwise against be.target.
EncodingCheck verify_encoding(const BlockEncoding& be, const VerifyOptions& opts = {},
                              const std::optional<ops::Operator>& reference = std::nullopt);

// label, alpha_reported, alpha_paper_bound, m_actual, m_paper_bound,
// unitarity_defect, block_error, pass
void write_encoding_report_csv(std::ostream& out, const std::vector<EncodingCheck>& rows);

}  // namespace be
}  // namespace qlbm
