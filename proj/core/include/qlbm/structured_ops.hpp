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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qlbm {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace ops {

inline constexpr std::size_t kDenseThreshold = 4096;
inline constexpr std::size_t kMaterializeCap = std::size_t{1} << 26;

enum class Kind {
  identity,
  permutation,
  diagonal,
  dense,
  tensor,
  product,
  sum,
  direct_sum,
  embedding,
  custom
};

std::string to_string(Kind kind);

class Operator;

// Base of all operator nodes. Nodes act on the middle index of a row-major
// (outer, dim, inner) tensor, which makes tensor products and batched
// application cheap.
class OperatorNode : public std::enable_shared_from_this<OperatorNode> {
 public:
  OperatorNode(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  virtual ~OperatorNode() = default;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  virtual Kind kind() const = 0;

  // in holds outer*cols()*inner entries, out receives outer*rows()*inner.
  // in and out never alias.
  virtual void apply_strided(
      const cplx* in, cplx* out, std::size_t outer,
      std::size_t inner) const = 0;

  virtual Operator adjoint() const = 0;

  virtual std::vector<Operator> children() const;
  virtual std::string describe() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
};

// Immutable handle to a node tree.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::shared_ptr<const OperatorNode> node);

  std::size_t rows() const { return node_->rows(); }
  std::size_t cols() const { return node_->cols(); }
  bool is_square() const { return rows() == cols(); }
  Kind kind() const { return node_->kind(); }
  bool valid() const { return node_ != nullptr; }

  CVector apply(const CVector& v) const;
  CVector apply_adjoint(const CVector& v) const;
  // Applies to every column of a (cols x k) matrix.
  CMatrix apply_columns(const CMatrix& block) const;
  void apply_strided(
      const cplx* in, cplx* out, std::size_t outer, std::size_t inner) const;

  Operator adjoint() const { return node_->adjoint(); }
  std::vector<Operator> children() const { return node_->children(); }
  std::string describe() const { return node_->describe(); }
  const OperatorNode& node() const { return *node_; }
  const std::shared_ptr<const OperatorNode>& node_ptr() const { return node_; }

 private:
  std::shared_ptr<const OperatorNode> node_;
};

Operator identity(std::size_t dim);
// map[i] is the image of basis vector i.
Operator permutation(std::vector<std::size_t> map);
Operator diagonal(CVector entries);
Operator diagonal(const std::vector<double>& entries);
Operator dense(CMatrix matrix);
Operator zero(std::size_t rows, std::size_t cols);
// tensor(L, R) = L ⊗ R; R acts on the low-order index.
Operator tensor(const Operator& left, const Operator& right);
Operator tensor(std::initializer_list<Operator> factors);
// product({A, B, C}) = A·B·C, so C is applied first.
Operator product(std::vector<Operator> factors);
Operator sum(std::vector<Operator> terms, std::vector<cplx> coeffs);
Operator sum(std::vector<Operator> terms);
Operator scaled(const Operator& op, cplx c);
Operator direct_sum(std::vector<Operator> blocks);
Operator embedding(
    const Operator& inner, std::size_t outer_rows, std::size_t outer_cols,
    std::size_t row_offset, std::size_t col_offset);
Operator embedding(const Operator& inner, std::size_t outer_dim,
                   std::size_t offset = 0);

// Swaps two adjacent registers: |a⟩|b⟩ → |b⟩|a⟩ with dims (da, db).
Operator swap_registers(std::size_t da, std::size_t db);

CMatrix materialize(const Operator& op, std::size_t cap = kMaterializeCap);

enum class NormMethod { dense_svd, power_iteration };
std::string to_string(NormMethod method);

struct NormOptions {
  double tol = 1e-8;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eed'0f'1a77ULL;
  std::size_t dense_threshold = kDenseThreshold;
};

struct OperatorNormReport {
  double spectral_norm_estimate = 0.0;
  NormMethod method = NormMethod::dense_svd;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

OperatorNormReport spectral_norm(const Operator& op, const NormOptions& opts = {});
OperatorNormReport spectral_norm(const Operator& op, double tol);

struct CompletionInfo {
  double input_norm = 0.0;
  bool clamped = false;
  std::vector<std::size_t> clamped_indices;
};

// [[B, √(I−BBᴴ)], [√(I−BᴴB), −Bᴴ]] for an r×c matrix B with ‖B‖ ≤ 1.
Operator unitary_completion(const CMatrix& B, CompletionInfo* info = nullptr);

struct UnitarityReport {
  bool is_unitary = false;
  double defect = 0.0;
  std::size_t probes = 0;
  bool exhaustive = false;
};

struct UnitarityOptions {
  std::size_t exhaustive_limit = kDenseThreshold;
  std::size_t probes = 64;
  std::uint64_t seed = 0xbadc0ffeULL;
  std::size_t batch = 64;
};

UnitarityReport verify_unitary(const Operator& op, double tol,
                               const UnitarityOptions& opts = {});

// Unit vector with a fixed seed; entries are complex Gaussian.
CVector random_unit_vector(std::size_t dim, std::uint64_t seed);

}  // namespace ops
}  // namespace qlbm
