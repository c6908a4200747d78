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

#include "qlbm/structured_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/SVD>

namespace qlbm {
namespace ops {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Temporary amplitude buffer drawn from a per-thread pool. Fresh
// multi-megabyte allocations page-fault on every apply; reused ones do not.
class Scratch {
 public:
  explicit Scratch(std::size_t n) : buf_(acquire(n)) {}
  ~Scratch() { pool().push_back(std::move(buf_)); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  cplx* data() { return buf_.data(); }

 private:
  static std::vector<std::vector<cplx>>& pool() {
    thread_local std::vector<std::vector<cplx>> p;
    return p;
  }
  // Smallest pooled buffer that fits, else the largest one grown to n.
  static std::vector<cplx> acquire(std::size_t n) {
    auto& p = pool();
    if (p.empty()) return std::vector<cplx>(n);
    auto best = p.end();
    auto largest = p.begin();
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (it->size() >= n && (best == p.end() || it->size() < best->size())) best = it;
      if (it->size() > largest->size()) largest = it;
    }
    auto pick = best != p.end() ? best : largest;
    std::vector<cplx> v = std::move(*pick);
    p.erase(pick);
    if (v.size() < n) v.resize(n);
    return v;
  }

  std::vector<cplx> buf_;
};

std::string dims(std::size_t r, std::size_t c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void copy_span(const cplx* in, cplx* out, std::size_t n) {
  std::copy(in, in + n, out);
}

class IdentityNode final : public OperatorNode {
 public:
  explicit IdentityNode(std::size_t dim) : OperatorNode(dim, dim) {}
  Kind kind() const override { return Kind::identity; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    copy_span(in, out, outer * rows() * inner);
  }
  Operator adjoint() const override { return Operator(shared_from_this()); }
  std::string describe() const override { return "I(" + std::to_string(rows()) + ")"; }
};

class PermutationNode final : public OperatorNode {
 public:
  PermutationNode(std::vector<std::size_t> map, std::vector<std::size_t> inv)
      : OperatorNode(map.size(), map.size()),
        map_(std::move(map)),
        inv_(std::move(inv)) {}
  Kind kind() const override { return Kind::permutation; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const std::size_t n = map_.size();
    for (std::size_t o = 0; o < outer; ++o) {
      const cplx* src = in + o * n * inner;
      cplx* dst = out + o * n * inner;
      if (inner == 1) {
        for (std::size_t i = 0; i < n; ++i) dst[map_[i]] = src[i];
      } else {
        for (std::size_t i = 0; i < n; ++i)
          copy_span(src + i * inner, dst + map_[i] * inner, inner);
      }
    }
  }
  Operator adjoint() const override {
    return Operator(std::make_shared<PermutationNode>(inv_, map_));
  }
  std::string describe() const override {
    return "Perm(" + std::to_string(rows()) + ")";
  }
  const std::vector<std::size_t>& map() const { return map_; }

 private:
  std::vector<std::size_t> map_;
  std::vector<std::size_t> inv_;
};

// Complex product without the NaN-recovery branch of operator*.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

class DiagonalNode final : public OperatorNode {
 public:
  explicit DiagonalNode(CVector d)
      : OperatorNode(d.size(), d.size()), d_(std::move(d)) {}
  Kind kind() const override { return Kind::diagonal; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const std::size_t n = rows();
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < n; ++i) {
        const cplx di = d_[static_cast<Eigen::Index>(i)];
        const std::size_t base = (o * n + i) * inner;
        for (std::size_t s = 0; s < inner; ++s) out[base + s] = mul(di, in[base + s]);
      }
    }
  }
  Operator adjoint() const override {
    return Operator(std::make_shared<DiagonalNode>(d_.conjugate()));
  }
  std::string describe() const override {
    return "Diag(" + std::to_string(rows()) + ")";
  }

 private:
  CVector d_;
};

class DenseNode final : public OperatorNode {
 public:
  explicit DenseNode(CMatrix m)
      : OperatorNode(m.rows(), m.cols()), m_(std::move(m)) {}
  Kind kind() const override { return Kind::dense; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const auto r = static_cast<Eigen::Index>(rows());
    const auto c = static_cast<Eigen::Index>(cols());
    // GEMM packing dominates for the 2x2..8x8 factors of encoding circuits.
    if (r * c <= kSmallDense) {
      apply_small(in, out, outer, inner);
      return;
    }
    if (inner == 1) {
      Eigen::Map<const RowMat> x(in, static_cast<Eigen::Index>(outer), c);
      Eigen::Map<RowMat> y(out, static_cast<Eigen::Index>(outer), r);
      y.noalias() = x * m_.transpose();
      return;
    }
    const auto k = static_cast<Eigen::Index>(inner);
    for (std::size_t o = 0; o < outer; ++o) {
      Eigen::Map<const RowMat> x(in + o * cols() * inner, c, k);
      Eigen::Map<RowMat> y(out + o * rows() * inner, r, k);
      y.noalias() = m_ * x;
    }
  }
  Operator adjoint() const override {
    return Operator(std::make_shared<DenseNode>(m_.adjoint()));
  }
  std::string describe() const override { return "Dense(" + dims(rows(), cols()) + ")"; }

 private:
  static constexpr Eigen::Index kSmallDense = 64;

  void apply_small(const cplx* in, cplx* out, std::size_t outer, std::size_t inner) const {
    const std::size_t r = rows();
    const std::size_t c = cols();
    for (std::size_t o = 0; o < outer; ++o) {
      const cplx* x = in + o * c * inner;
      cplx* y = out + o * r * inner;
      for (std::size_t i = 0; i < r; ++i) {
        cplx* yi = y + i * inner;
        std::fill(yi, yi + inner, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < c; ++j) {
          const cplx a = m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
          if (a == cplx{0.0, 0.0}) continue;
          const cplx* xj = x + j * inner;
          for (std::size_t t = 0; t < inner; ++t) yi[t] += mul(a, xj[t]);
        }
      }
    }
  }

  CMatrix m_;
};

class ZeroNode final : public OperatorNode {
 public:
  ZeroNode(std::size_t r, std::size_t c) : OperatorNode(r, c) {}
  Kind kind() const override { return Kind::sum; }
  void apply_strided(const cplx*, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    std::fill(out, out + outer * rows() * inner, cplx{0.0, 0.0});
  }
  Operator adjoint() const override {
    return Operator(std::make_shared<ZeroNode>(cols(), rows()));
  }
  std::string describe() const override { return "Zero(" + dims(rows(), cols()) + ")"; }
};

class TensorNode final : public OperatorNode {
 public:
  TensorNode(Operator l, Operator r)
      : OperatorNode(l.rows() * r.rows(), l.cols() * r.cols()),
        l_(std::move(l)),
        r_(std::move(r)) {}
  Kind kind() const override { return Kind::tensor; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const bool l_id = l_.kind() == Kind::identity;
    const bool r_id = r_.kind() == Kind::identity;
    if (r_id) {
      l_.apply_strided(in, out, outer, r_.rows() * inner);
      return;
    }
    if (l_id) {
      r_.apply_strided(in, out, outer * l_.cols(), inner);
      return;
    }
    Scratch tmp(outer * l_.cols() * r_.rows() * inner);
    r_.apply_strided(in, tmp.data(), outer * l_.cols(), inner);
    l_.apply_strided(tmp.data(), out, outer, r_.rows() * inner);
  }
  Operator adjoint() const override { return tensor(l_.adjoint(), r_.adjoint()); }
  std::vector<Operator> children() const override { return {l_, r_}; }
  std::string describe() const override {
    return "(" + l_.describe() + " ⊗ " + r_.describe() + ")";
  }

 private:
  Operator l_;
  Operator r_;
};

class ProductNode final : public OperatorNode {
 public:
  explicit ProductNode(std::vector<Operator> f)
      : OperatorNode(f.front().rows(), f.back().cols()), f_(std::move(f)) {}
  Kind kind() const override { return Kind::product; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    if (f_.size() == 1) {
      f_[0].apply_strided(in, out, outer, inner);
      return;
    }
    std::size_t widest = 0;
    for (std::size_t k = 1; k < f_.size(); ++k) widest = std::max(widest, f_[k].rows());
    Scratch a(outer * widest * inner);
    Scratch b(outer * widest * inner);
    const cplx* cur = in;
    for (std::size_t k = f_.size(); k-- > 0;) {
      const Operator& op = f_[k];
      if (k == 0) {
        op.apply_strided(cur, out, outer, inner);
        break;
      }
      cplx* dst = cur == a.data() ? b.data() : a.data();
      op.apply_strided(cur, dst, outer, inner);
      cur = dst;
    }
  }
  Operator adjoint() const override {
    std::vector<Operator> r;
    r.reserve(f_.size());
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) r.push_back(it->adjoint());
    return product(std::move(r));
  }
  std::vector<Operator> children() const override { return f_; }
  std::string describe() const override {
    std::string s = "(";
    for (std::size_t k = 0; k < f_.size(); ++k) {
      if (k) s += " · ";
      s += f_[k].describe();
    }
    return s + ")";
  }

 private:
  std::vector<Operator> f_;
};

class SumNode final : public OperatorNode {
 public:
  SumNode(std::vector<Operator> t, std::vector<cplx> c)
      : OperatorNode(t.front().rows(), t.front().cols()),
        t_(std::move(t)),
        c_(std::move(c)) {}
  Kind kind() const override { return Kind::sum; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const std::size_t n = outer * rows() * inner;
    t_[0].apply_strided(in, out, outer, inner);
    if (c_[0] != cplx{1.0, 0.0})
      for (std::size_t i = 0; i < n; ++i) out[i] = mul(c_[0], out[i]);
    if (t_.size() == 1) return;
    Scratch tmp(n);
    for (std::size_t k = 1; k < t_.size(); ++k) {
      t_[k].apply_strided(in, tmp.data(), outer, inner);
      const cplx ck = c_[k];
      const cplx* t = tmp.data();
      for (std::size_t i = 0; i < n; ++i) out[i] += mul(ck, t[i]);
    }
  }
  Operator adjoint() const override {
    std::vector<Operator> t;
    std::vector<cplx> c;
    for (std::size_t k = 0; k < t_.size(); ++k) {
      t.push_back(t_[k].adjoint());
      c.push_back(std::conj(c_[k]));
    }
    return sum(std::move(t), std::move(c));
  }
  std::vector<Operator> children() const override { return t_; }
  std::string describe() const override {
    std::string s = "(";
    for (std::size_t k = 0; k < t_.size(); ++k) {
      if (k) s += " + ";
      std::ostringstream os;
      os << c_[k].real();
      if (c_[k].imag() != 0.0) os << (c_[k].imag() > 0 ? "+" : "") << c_[k].imag() << "i";
      s += os.str() + "*" + t_[k].describe();
    }
    return s + ")";
  }

 private:
  std::vector<Operator> t_;
  std::vector<cplx> c_;
};

class DirectSumNode final : public OperatorNode {
 public:
  DirectSumNode(std::vector<Operator> b, std::size_t r, std::size_t c)
      : OperatorNode(r, c), b_(std::move(b)) {}
  Kind kind() const override { return Kind::direct_sum; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    if (outer == 1) {
      std::size_t ro = 0;
      std::size_t co = 0;
      for (const Operator& blk : b_) {
        blk.apply_strided(in + co * inner, out + ro * inner, 1, inner);
        ro += blk.rows();
        co += blk.cols();
      }
      return;
    }
    // Gather each block's slices across `outer` so it is applied in one call.
    std::size_t widest = 0;
    for (const Operator& blk : b_) widest = std::max({widest, blk.rows(), blk.cols()});
    Scratch src(outer * widest * inner);
    Scratch dst(outer * widest * inner);
    std::size_t ro = 0;
    std::size_t co = 0;
    for (const Operator& blk : b_) {
      const std::size_t ci = blk.cols() * inner;
      const std::size_t ri = blk.rows() * inner;
      for (std::size_t o = 0; o < outer; ++o)
        copy_span(in + (o * cols() + co) * inner, src.data() + o * ci, ci);
      blk.apply_strided(src.data(), dst.data(), outer, inner);
      for (std::size_t o = 0; o < outer; ++o)
        copy_span(dst.data() + o * ri, out + (o * rows() + ro) * inner, ri);
      ro += blk.rows();
      co += blk.cols();
    }
  }
  Operator adjoint() const override {
    std::vector<Operator> b;
    for (const Operator& blk : b_) b.push_back(blk.adjoint());
    return direct_sum(std::move(b));
  }
  std::vector<Operator> children() const override { return b_; }
  std::string describe() const override {
    std::string s = "(";
    for (std::size_t k = 0; k < b_.size(); ++k) {
      if (k) s += " ⊕ ";
      s += b_[k].describe();
    }
    return s + ")";
  }

 private:
  std::vector<Operator> b_;
};

class EmbeddingNode final : public OperatorNode {
 public:
  EmbeddingNode(Operator inner, std::size_t r, std::size_t c, std::size_t ro,
                std::size_t co)
      : OperatorNode(r, c), in_(std::move(inner)), ro_(ro), co_(co) {}
  Kind kind() const override { return Kind::embedding; }
  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    std::fill(out, out + outer * rows() * inner, cplx{0.0, 0.0});
    if (outer == 1) {
      in_.apply_strided(in + co_ * inner, out + ro_ * inner, 1, inner);
      return;
    }
    const std::size_t ci = in_.cols() * inner;
    const std::size_t ri = in_.rows() * inner;
    Scratch src(outer * ci);
    Scratch dst(outer * ri);
    for (std::size_t o = 0; o < outer; ++o)
      copy_span(in + (o * cols() + co_) * inner, src.data() + o * ci, ci);
    in_.apply_strided(src.data(), dst.data(), outer, inner);
    for (std::size_t o = 0; o < outer; ++o)
      copy_span(dst.data() + o * ri, out + (o * rows() + ro_) * inner, ri);
  }
  Operator adjoint() const override {
    return embedding(in_.adjoint(), cols(), rows(), co_, ro_);
  }
  std::vector<Operator> children() const override { return {in_}; }
  std::string describe() const override {
    return "Embed[" + dims(rows(), cols()) + "@" + std::to_string(ro_) + "," +
           std::to_string(co_) + "](" + in_.describe() + ")";
  }

 private:
  Operator in_;
  std::size_t ro_;
  std::size_t co_;
};

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::permutation: return "permutation";
    case Kind::diagonal: return "diagonal";
    case Kind::dense: return "dense";
    case Kind::tensor: return "tensor";
    case Kind::product: return "product";
    case Kind::sum: return "sum";
    case Kind::direct_sum: return "direct-sum";
    case Kind::embedding: return "embedding";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

std::string to_string(NormMethod method) {
  return method == NormMethod::dense_svd ? "dense-svd" : "power-iteration";
}

std::vector<Operator> OperatorNode::children() const { return {}; }

std::string OperatorNode::describe() const {
  return to_string(kind()) + "(" + dims(rows(), cols()) + ")";
}

Operator::Operator(std::shared_ptr<const OperatorNode> node) : node_(std::move(node)) {
  if (!node_) throw std::invalid_argument("Operator: null node");
}

void Operator::apply_strided(const cplx* in, cplx* out, std::size_t outer,
                             std::size_t inner) const {
  node_->apply_strided(in, out, outer, inner);
}

CVector Operator::apply(const CVector& v) const {
  if (static_cast<std::size_t>(v.size()) != cols()) {
    throw std::invalid_argument("apply: operator is " + dims(rows(), cols()) +
                                " but vector has length " + std::to_string(v.size()));
  }
  CVector out(static_cast<Eigen::Index>(rows()));
  node_->apply_strided(v.data(), out.data(), 1, 1);
  return out;
}

CVector Operator::apply_adjoint(const CVector& v) const { return adjoint().apply(v); }

CMatrix Operator::apply_columns(const CMatrix& block) const {
  if (static_cast<std::size_t>(block.rows()) != cols()) {
    throw std::invalid_argument("apply_columns: operator is " + dims(rows(), cols()) +
                                " but block has " + std::to_string(block.rows()) + " rows");
  }
  RowMat x = block;
  RowMat y(static_cast<Eigen::Index>(rows()), block.cols());
  node_->apply_strided(x.data(), y.data(), 1, static_cast<std::size_t>(block.cols()));
  return y;
}

Operator identity(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("identity: dim must be positive");
  return Operator(std::make_shared<IdentityNode>(dim));
}

Operator permutation(std::vector<std::size_t> map) {
  const std::size_t n = map.size();
  if (n == 0) throw std::invalid_argument("permutation: empty map");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (map[i] >= n || inv[map[i]] != n) {
      throw std::invalid_argument("permutation: map is not a bijection at index " +
                                  std::to_string(i));
    }
    inv[map[i]] = i;
  }
  return Operator(std::make_shared<PermutationNode>(std::move(map), std::move(inv)));
}

Operator diagonal(CVector entries) {
  if (entries.size() == 0) throw std::invalid_argument("diagonal: empty entries");
  return Operator(std::make_shared<DiagonalNode>(std::move(entries)));
}

Operator diagonal(const std::vector<double>& entries) {
  CVector d(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i)
    d[static_cast<Eigen::Index>(i)] = entries[i];
  return diagonal(std::move(d));
}

Operator dense(CMatrix matrix) {
  if (matrix.size() == 0) throw std::invalid_argument("dense: empty matrix");
  return Operator(std::make_shared<DenseNode>(std::move(matrix)));
}

Operator zero(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("zero: dims must be positive");
  return Operator(std::make_shared<ZeroNode>(rows, cols));
}

Operator tensor(const Operator& left, const Operator& right) {
  if (!left.valid() || !right.valid()) throw std::invalid_argument("tensor: null factor");
  if (left.kind() == Kind::identity && right.kind() == Kind::identity)
    return identity(left.rows() * right.rows());
  return Operator(std::make_shared<TensorNode>(left, right));
}

Operator tensor(std::initializer_list<Operator> factors) {
  if (factors.size() == 0) throw std::invalid_argument("tensor: no factors");
  auto it = factors.begin();
  Operator acc = *it++;
  for (; it != factors.end(); ++it) acc = tensor(acc, *it);
  return acc;
}

Operator product(std::vector<Operator> factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  for (std::size_t k = 0; k + 1 < factors.size(); ++k) {
    if (factors[k].cols() != factors[k + 1].rows()) {
      throw std::invalid_argument("product: factor " + std::to_string(k) + " is " +
                                  dims(factors[k].rows(), factors[k].cols()) +
                                  " but factor " + std::to_string(k + 1) + " is " +
                                  dims(factors[k + 1].rows(), factors[k + 1].cols()));
    }
  }
  std::vector<Operator> kept;
  for (Operator& f : factors)
    if (f.kind() != Kind::identity) kept.push_back(std::move(f));
  if (kept.empty()) return identity(factors.front().rows());
  if (kept.size() == 1) return kept.front();
  return Operator(std::make_shared<ProductNode>(std::move(kept)));
}

Operator sum(std::vector<Operator> terms, std::vector<cplx> coeffs) {
  if (terms.empty()) throw std::invalid_argument("sum: no terms");
  if (terms.size() != coeffs.size())
    throw std::invalid_argument("sum: " + std::to_string(terms.size()) + " terms but " +
                                std::to_string(coeffs.size()) + " coefficients");
  for (std::size_t k = 1; k < terms.size(); ++k) {
    if (terms[k].rows() != terms[0].rows() || terms[k].cols() != terms[0].cols()) {
      throw std::invalid_argument("sum: term " + std::to_string(k) + " is " +
                                  dims(terms[k].rows(), terms[k].cols()) + ", expected " +
                                  dims(terms[0].rows(), terms[0].cols()));
    }
  }
  return Operator(std::make_shared<SumNode>(std::move(terms), std::move(coeffs)));
}

Operator sum(std::vector<Operator> terms) {
  std::vector<cplx> c(terms.size(), cplx{1.0, 0.0});
  return sum(std::move(terms), std::move(c));
}

Operator scaled(const Operator& op, cplx c) { return sum({op}, {c}); }

Operator direct_sum(std::vector<Operator> blocks) {
  if (blocks.empty()) throw std::invalid_argument("direct_sum: no blocks");
  std::size_t r = 0;
  std::size_t c = 0;
  for (const Operator& b : blocks) {
    if (!b.valid()) throw std::invalid_argument("direct_sum: null block");
    r += b.rows();
    c += b.cols();
  }
  return Operator(std::make_shared<DirectSumNode>(std::move(blocks), r, c));
}

Operator embedding(const Operator& inner, std::size_t outer_rows, std::size_t outer_cols,
                   std::size_t row_offset, std::size_t col_offset) {
  if (row_offset + inner.rows() > outer_rows || col_offset + inner.cols() > outer_cols) {
    throw std::invalid_argument("embedding: " + dims(inner.rows(), inner.cols()) +
                                " at offset (" + std::to_string(row_offset) + "," +
                                std::to_string(col_offset) + ") does not fit in " +
                                dims(outer_rows, outer_cols));
  }
  if (outer_rows == inner.rows() && outer_cols == inner.cols()) return inner;
  return Operator(std::make_shared<EmbeddingNode>(inner, outer_rows, outer_cols,
                                                  row_offset, col_offset));
}

Operator embedding(const Operator& inner, std::size_t outer_dim, std::size_t offset) {
  return embedding(inner, outer_dim, outer_dim, offset, offset);
}

Operator swap_registers(std::size_t da, std::size_t db) {
  std::vector<std::size_t> map(da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) map[a * db + b] = b * da + a;
  return permutation(std::move(map));
}

CMatrix materialize(const Operator& op, std::size_t cap) {
  const std::size_t r = op.rows();
  const std::size_t c = op.cols();
  if (r * c > cap) {
    throw std::length_error("materialize: " + dims(r, c) + " needs " +
                            std::to_string(r * c) + " entries, cap is " +
                            std::to_string(cap));
  }
  RowMat eye = RowMat::Identity(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
  RowMat out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  op.apply_strided(eye.data(), out.data(), 1, c);
  return out;
}

CVector random_unit_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

OperatorNormReport spectral_norm(const Operator& op, double tol) {
  NormOptions o;
  o.tol = tol;
  return spectral_norm(op, o);
}

OperatorNormReport spectral_norm(const Operator& op, const NormOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("spectral_norm: tol must be positive");
  OperatorNormReport rep;
  if (std::max(op.rows(), op.cols()) <= opts.dense_threshold) {
    CMatrix m = materialize(op);
    Eigen::BDCSVD<CMatrix> svd(m);
    rep.method = NormMethod::dense_svd;
    rep.spectral_norm_estimate = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    rep.iterations = 0;
    rep.residual = 0.0;
    rep.converged = true;
    return rep;
  }
  rep.method = NormMethod::power_iteration;
  const Operator adj = op.adjoint();
  CVector v = random_unit_vector(op.cols(), opts.seed);
  double rho = 0.0;
  rep.converged = false;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    CVector z = adj.apply(op.apply(v));
    rho = v.dot(z).real();
    const double zn = z.norm();
    rep.iterations = it;
    if (zn == 0.0) {
      rho = 0.0;
      rep.residual = 0.0;
      rep.converged = true;
      break;
    }
    rep.residual = (z - rho * v).norm() / std::max(rho, std::numeric_limits<double>::min());
    v = z / zn;
    if (rep.residual <= opts.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.spectral_norm_estimate = std::sqrt(std::max(rho, 0.0));
  return rep;
}

Operator unitary_completion(const CMatrix& B, CompletionInfo* info) {
  const Eigen::Index r = B.rows();
  const Eigen::Index c = B.cols();
  if (r == 0 || c == 0) throw std::invalid_argument("unitary_completion: empty matrix");
  Eigen::BDCSVD<CMatrix> svd(B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  CompletionInfo local;
  local.input_norm = s.size() ? s[0] : 0.0;
  if (local.input_norm > 1.0 + 1e-6) {
    throw std::domain_error("unitary_completion: ‖B‖ = " + std::to_string(local.input_norm) +
                            " exceeds 1");
  }
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > 1.0) {
      if (s[i] > 1.0 + 1e-12) {
        local.clamped = true;
        local.clamped_indices.push_back(static_cast<std::size_t>(i));
      }
      s[i] = 1.0;
    }
  }
  const CMatrix& U = svd.matrixU();
  const CMatrix& V = svd.matrixV();
  Eigen::VectorXd dr = Eigen::VectorXd::Ones(r);
  Eigen::VectorXd dc = Eigen::VectorXd::Ones(c);
  CMatrix Sigma = CMatrix::Zero(r, c);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    Sigma(i, i) = s[i];
    const double comp = std::sqrt(std::max(0.0, 1.0 - s[i] * s[i]));
    dr[i] = comp;
    dc[i] = comp;
  }
  const CMatrix Bc = local.clamped ? CMatrix(U * Sigma * V.adjoint()) : B;
  const CMatrix Sr = U * dr.cast<cplx>().asDiagonal() * U.adjoint();
  const CMatrix Sc = V * dc.cast<cplx>().asDiagonal() * V.adjoint();
  CMatrix W(r + c, c + r);
  W.topLeftCorner(r, c) = Bc;
  W.topRightCorner(r, r) = Sr;
  W.bottomLeftCorner(c, c) = Sc;
  W.bottomRightCorner(c, r) = -Bc.adjoint();
  if (info) *info = std::move(local);
  return dense(std::move(W));
}

UnitarityReport verify_unitary(const Operator& op, double tol, const UnitarityOptions& opts) {
  UnitarityReport rep;
  if (!op.is_square()) {
    rep.is_unitary = false;
    rep.defect = std::numeric_limits<double>::infinity();
    return rep;
  }
  const std::size_t n = op.rows();
  const Operator adj = op.adjoint();
  const std::size_t batch = std::max<std::size_t>(1, opts.batch);
  double defect = 0.0;
  auto check = [&](const RowMat& x) {
    RowMat y(x.rows(), x.cols());
    RowMat z(x.rows(), x.cols());
    op.apply_strided(x.data(), y.data(), 1, static_cast<std::size_t>(x.cols()));
    adj.apply_strided(y.data(), z.data(), 1, static_cast<std::size_t>(x.cols()));
    z -= x;
    for (Eigen::Index k = 0; k < z.cols(); ++k) defect = std::max(defect, z.col(k).norm());
  };
  if (n <= opts.exhaustive_limit) {
    rep.exhaustive = true;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t w = std::min(batch, n - start);
      RowMat x = RowMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(w));
      for (std::size_t k = 0; k < w; ++k)
        x(static_cast<Eigen::Index>(start + k), static_cast<Eigen::Index>(k)) = 1.0;
      check(x);
    }
    rep.probes = n;
  } else {
    rep.exhaustive = false;
    std::size_t done = 0;
    while (done < opts.probes) {
      const std::size_t w = std::min(batch, opts.probes - done);
      RowMat x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(w));
      for (std::size_t k = 0; k < w; ++k)
        x.col(static_cast<Eigen::Index>(k)) = random_unit_vector(n, opts.seed + done + k);
      check(x);
      done += w;
    }
    rep.probes = opts.probes;
  }
  rep.defect = defect;
  rep.is_unitary = defect <= tol;
  return rep;
}

}  // namespace ops
}  // namespace qlbm
