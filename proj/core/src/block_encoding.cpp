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

#include "qlbm/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#include "qlbm/csv.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {
namespace be {

namespace {

std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

CMatrix unit_2x2(int r, int c) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(r, c) = 1.0;
  return m;
}

// [[a, s], [s, −ā]] for each entry a, applied with the ancilla most significant.
ops::Operator rotation_unitary(const CVector& d) {
  CVector s(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i)
    s[i] = std::sqrt(std::max(0.0, 1.0 - std::norm(d[i])));
  return ops::sum({ops::tensor(ops::dense(unit_2x2(0, 0)), ops::diagonal(d)),
                   ops::tensor(ops::dense(unit_2x2(0, 1)), ops::diagonal(s)),
                   ops::tensor(ops::dense(unit_2x2(1, 0)), ops::diagonal(s)),
                   ops::tensor(ops::dense(unit_2x2(1, 1)), ops::diagonal(CVector(-d.conjugate())))});
}

void require_same_system(const BlockEncoding& a, const BlockEncoding& b, const char* what) {
  if (a.system_dim != b.system_dim) {
    throw std::invalid_argument(std::string(what) + ": system dims differ (" +
                                std::to_string(a.system_dim) + " vs " +
                                std::to_string(b.system_dim) + ")");
  }
}

std::size_t column_chunk(std::size_t dim) {
  return std::max<std::size_t>(1, (std::size_t{1} << 21) / std::max<std::size_t>(dim, 1));
}

}  // namespace

CVector be_apply_block(const BlockEncoding& be, const CVector& v) {
  if (static_cast<std::size_t>(v.size()) != be.system_dim) {
    throw std::invalid_argument("be_apply_block: vector has length " + std::to_string(v.size()) +
                                ", system dim is " + std::to_string(be.system_dim));
  }
  CVector x = CVector::Zero(static_cast<Eigen::Index>(be.dim()));
  x.head(v.size()) = v;
  CVector y = be.U.apply(x);
  return be.alpha * y.head(v.size());
}

ops::Operator be_block_operator(const BlockEncoding& be) {
  const std::size_t s = be.system_dim;
  const std::size_t d = be.dim();
  if (d == s) return ops::scaled(be.U, be.alpha);
  return ops::scaled(ops::product({ops::embedding(ops::identity(s), s, d, 0, 0), be.U,
                                   ops::embedding(ops::identity(s), d, s, 0, 0)}),
                     be.alpha);
}

CMatrix be_extract(const BlockEncoding& be) {
  const std::size_t s = be.system_dim;
  const std::size_t d = be.dim();
  if (s * s > ops::kMaterializeCap)
    throw std::length_error("be_extract: block of dim " + std::to_string(s) + " exceeds cap");
  CMatrix out(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
  const std::size_t chunk = column_chunk(d);
  for (std::size_t start = 0; start < s; start += chunk) {
    const std::size_t w = std::min(chunk, s - start);
    CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(w));
    for (std::size_t k = 0; k < w; ++k)
      x(static_cast<Eigen::Index>(start + k), static_cast<Eigen::Index>(k)) = 1.0;
    CMatrix y = be.U.apply_columns(x);
    out.middleCols(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(w)) =
        be.alpha * y.topRows(static_cast<Eigen::Index>(s));
  }
  return out;
}

BlockEncoding be_unitary(const ops::Operator& U, std::string label) {
  if (!U.is_square()) throw std::invalid_argument("be_unitary: operator is not square");
  if (!lattice::is_power_of_two(U.rows()))
    throw std::invalid_argument("be_unitary: dim " + std::to_string(U.rows()) +
                                " is not a power of two");
  BlockEncoding be;
  be.U = U;
  be.alpha = 1.0;
  be.m = 0;
  be.system_dim = U.rows();
  be.target = U;
  be.label = std::move(label);
  be.alpha_paper = 1.0;
  be.m_paper_bound = 0;
  return be;
}

BlockEncoding be_identity(std::size_t system_dim) {
  return be_unitary(ops::identity(system_dim), "I");
}

BlockEncoding be_rescale(const BlockEncoding& be, double factor, std::string label) {
  if (!(factor > 0.0)) throw std::invalid_argument("be_rescale: factor must be positive");
  BlockEncoding out = be;
  out.alpha = be.alpha * factor;
  out.epsilon = be.epsilon * factor;
  out.target = ops::scaled(be.target, factor);
  if (!label.empty()) out.label = std::move(label);
  out.alpha_paper.reset();
  out.m_paper_bound.reset();
  return out;
}

BlockEncoding be_relabel(BlockEncoding be, std::string label, std::optional<double> alpha_paper,
                         std::optional<std::size_t> m_paper_bound) {
  be.label = std::move(label);
  be.alpha_paper = alpha_paper;
  be.m_paper_bound = m_paper_bound;
  return be;
}

BlockEncoding be_pad_ancillas(const BlockEncoding& be, std::size_t m_total) {
  if (m_total < be.m)
    throw std::invalid_argument("be_pad_ancillas: cannot shrink from " + std::to_string(be.m) +
                                " to " + std::to_string(m_total) + " ancillas");
  if (m_total == be.m) return be;
  BlockEncoding out = be;
  out.U = ops::tensor(ops::identity(pow2(m_total - be.m)), be.U);
  out.m = m_total;
  return out;
}

BlockEncoding be_diagonal(const CVector& entries, double alpha, std::string label) {
  if (!(alpha > 0.0)) throw std::invalid_argument("be_diagonal: alpha must be positive");
  const std::size_t n = static_cast<std::size_t>(entries.size());
  if (!lattice::is_power_of_two(n))
    throw std::invalid_argument("be_diagonal: dim " + std::to_string(n) +
                                " is not a power of two");
  CVector d = entries / alpha;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double a = std::abs(d[i]);
    if (a > 1.0 + 1e-12) {
      throw std::domain_error("be_diagonal: entry " + std::to_string(i) + " has |a|/alpha = " +
                              std::to_string(a) + " > 1");
    }
    if (a > 1.0) d[i] /= a;
  }
  BlockEncoding be;
  be.U = rotation_unitary(d);
  be.alpha = alpha;
  be.m = 1;
  be.system_dim = n;
  be.target = ops::diagonal(entries);
  be.label = label.empty() ? "diag" : std::move(label);
  be.alpha_paper = alpha;
  be.m_paper_bound = lattice::log2_exact(n) + 1;
  return be;
}

BlockEncoding be_scalar(cplx k, std::size_t system_dim) {
  if (std::abs(k) > 1.0 + 1e-12)
    throw std::domain_error("be_scalar: |k| = " + std::to_string(std::abs(k)) + " > 1");
  CVector d(1);
  d[0] = k;
  BlockEncoding be;
  be.U = ops::tensor(rotation_unitary(d), ops::identity(system_dim));
  be.alpha = 1.0;
  be.m = 1;
  be.system_dim = system_dim;
  be.target = ops::scaled(ops::identity(system_dim), k);
  be.label = "scalar";
  return be;
}

BlockEncoding be_dense(const CMatrix& A, double alpha, std::string label) {
  if (!(alpha > 0.0)) throw std::invalid_argument("be_dense: alpha must be positive");
  const std::size_t p = next_pow2(static_cast<std::size_t>(std::max(A.rows(), A.cols())));
  CMatrix B = CMatrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  B.topLeftCorner(A.rows(), A.cols()) = A / alpha;
  ops::CompletionInfo info;
  BlockEncoding be;
  be.U = ops::unitary_completion(B, &info);
  be.alpha = alpha;
  be.m = 1;
  be.system_dim = p;
  be.target = ops::embedding(ops::dense(A), p, p, 0, 0);
  be.label = label.empty() ? "dense" : std::move(label);
  return be;
}

BlockEncoding be_dense(const ops::Operator& A, double alpha, std::string label) {
  return be_dense(ops::materialize(A), alpha, std::move(label));
}

BlockEncoding be_sparse(const CMatrix& A, std::string label) {
  if (A.rows() != A.cols()) throw std::invalid_argument("be_sparse: matrix is not square");
  const std::size_t n = static_cast<std::size_t>(A.rows());
  if (!lattice::is_power_of_two(n))
    throw std::invalid_argument("be_sparse: dim " + std::to_string(n) + " is not a power of two");
  const double amax = A.cwiseAbs().maxCoeff();
  if (amax > 1.0 + 1e-12)
    throw std::domain_error("be_sparse: ‖A‖_max = " + std::to_string(amax) + " > 1");
  std::size_t s = 0;
  bool is_diag = true;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    std::size_t row = 0;
    std::size_t col = 0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (A(i, j) != cplx{0.0, 0.0}) {
        ++row;
        if (i != j) is_diag = false;
      }
      if (A(j, i) != cplx{0.0, 0.0}) ++col;
    }
    s = std::max({s, row, col});
  }
  const std::size_t nq = lattice::log2_exact(n);
  BlockEncoding be;
  if (is_diag) {
    be = be_diagonal(A.diagonal(), 1.0, label.empty() ? "sparse-diag" : label);
    be.alpha_paper = 1.0;
  } else {
    be = be_dense(A, static_cast<double>(s), label.empty() ? "sparse" : label);
    be.alpha_paper = static_cast<double>(s);
  }
  be.m_paper_bound = nq + 1;
  return be;
}

BlockEncoding be_product(const BlockEncoding& be1, const BlockEncoding& be2) {
  require_same_system(be1, be2, "be_product");
  const std::size_t s = be1.system_dim;
  const std::size_t a1 = pow2(be1.m);
  const std::size_t a2 = pow2(be2.m);
  // Layout [a1][a2][s]. U2 acts on [a2][s]; U1 on [a1][s] after swapping a1, a2.
  ops::Operator u2 = ops::tensor(ops::identity(a1), be2.U);
  ops::Operator u1;
  if (be2.m == 0) {
    u1 = be1.U;
  } else if (be1.m == 0) {
    u1 = ops::tensor(ops::identity(a2), be1.U);
  } else {
    const ops::Operator r = ops::tensor(ops::swap_registers(a1, a2), ops::identity(s));
    u1 = ops::product({r.adjoint(), ops::tensor(ops::identity(a2), be1.U), r});
  }
  BlockEncoding out;
  out.U = ops::product({u1, u2});
  out.alpha = be1.alpha * be2.alpha;
  out.m = be1.m + be2.m;
  out.epsilon = be1.alpha * be2.epsilon + be2.alpha * be1.epsilon;
  out.system_dim = s;
  out.target = ops::product({be1.target, be2.target});
  out.label = "(" + be1.label + ")·(" + be2.label + ")";
  return out;
}

BlockEncoding be_tensor(const BlockEncoding& be1, const BlockEncoding& be2) {
  const std::size_t a1 = pow2(be1.m);
  const std::size_t a2 = pow2(be2.m);
  const std::size_t s1 = be1.system_dim;
  const std::size_t s2 = be2.system_dim;
  ops::Operator u = ops::tensor(be1.U, be2.U);
  if (be2.m != 0 && s1 != 1) {
    // [a1][a2][s1][s2] → [a1][s1][a2][s2]
    const ops::Operator r =
        ops::tensor({ops::identity(a1), ops::swap_registers(a2, s1), ops::identity(s2)});
    u = ops::product({r.adjoint(), u, r});
  }
  BlockEncoding out;
  out.U = u;
  out.alpha = be1.alpha * be2.alpha;
  out.m = be1.m + be2.m;
  out.epsilon = be1.alpha * be2.epsilon + be2.alpha * be1.epsilon;
  out.system_dim = s1 * s2;
  out.target = ops::tensor(be1.target, be2.target);
  out.label = "(" + be1.label + ")⊗(" + be2.label + ")";
  return out;
}

BlockEncoding be_sum(const BlockEncoding& be1, const BlockEncoding& be2, cplx c1, cplx c2) {
  require_same_system(be1, be2, "be_sum");
  const double alpha = std::abs(c1) * be1.alpha + std::abs(c2) * be2.alpha;
  if (!(alpha > 0.0)) throw std::invalid_argument("be_sum: both terms vanish");
  const std::size_t m = std::max(be1.m, be2.m);
  const BlockEncoding p1 = be_pad_ancillas(be1, m);
  const BlockEncoding p2 = be_pad_ancillas(be2, m);
  CVector d(2);
  CVector cl(2);
  const cplx cs[2] = {c1, c2};
  const double as[2] = {be1.alpha, be2.alpha};
  for (int j = 0; j < 2; ++j) {
    d[j] = std::sqrt(std::abs(cs[j]) * as[j] / alpha);
    const cplx phase = std::abs(cs[j]) > 0.0 ? cs[j] / std::abs(cs[j]) : cplx{1.0, 0.0};
    cl[j] = std::conj(phase) * d[j];
  }
  const CMatrix PR = unitary_with_first_column(d);
  const CMatrix PL = unitary_with_first_column(cl);
  const std::size_t rest = pow2(m) * be1.system_dim;
  BlockEncoding out;
  out.U = ops::product({ops::tensor(ops::dense(PL.adjoint()), ops::identity(rest)),
                        ops::direct_sum({p1.U, p2.U}),
                        ops::tensor(ops::dense(PR), ops::identity(rest))});
  out.alpha = alpha;
  out.m = m + 1;
  out.epsilon = std::abs(c1) * be1.epsilon + std::abs(c2) * be2.epsilon;
  out.system_dim = be1.system_dim;
  out.target = ops::sum({be1.target, be2.target}, {c1, c2});
  out.label = "(" + be1.label + ")+(" + be2.label + ")";
  return out;
}

std::size_t StatePrepPair::qubits() const {
  return lattice::log2_exact(static_cast<std::size_t>(P_R.rows()));
}

double StatePrepPair::delta() const {
  double s = 0.0;
  for (Eigen::Index j = 0; j < P_R.rows(); ++j) {
    const cplx yj = j < y.size() ? y[j] : cplx{0.0, 0.0};
    s += std::abs(beta * std::conj(P_L(j, 0)) * P_R(j, 0) - yj);
  }
  return s;
}

CMatrix unitary_with_first_column(const CVector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) throw std::invalid_argument("unitary_with_first_column: empty vector");
  const double nv = v.norm();
  if (std::abs(nv - 1.0) > 1e-12)
    throw std::invalid_argument("unitary_with_first_column: vector norm " + std::to_string(nv) +
                                " is not 1");
  CMatrix seed = CMatrix::Identity(n, n);
  seed.col(0) = v;
  // Keep the seed full rank when v is orthogonal to e₀.
  if (std::abs(v[0]) < 1e-8) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    seed.col(k) = CMatrix::Identity(n, n).col(0);
  }
  Eigen::HouseholderQR<CMatrix> qr(seed);
  CMatrix Q = qr.householderQ();
  // The first column equals v up to a phase; other columns stay orthogonal to it.
  Q.col(0) = v;
  return Q;
}

StatePrepPair make_state_prep_pair(const CVector& y) {
  const std::size_t j = std::max<std::size_t>(2, next_pow2(static_cast<std::size_t>(y.size())));
  const double beta = y.cwiseAbs().sum();
  if (!(beta > 0.0)) throw std::invalid_argument("make_state_prep_pair: y is zero");
  CVector d = CVector::Zero(static_cast<Eigen::Index>(j));
  CVector c = CVector::Zero(static_cast<Eigen::Index>(j));
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    d[k] = std::sqrt(std::abs(y[k]) / beta);
    const cplx phase = std::abs(y[k]) > 0.0 ? y[k] / std::abs(y[k]) : cplx{1.0, 0.0};
    c[k] = std::conj(phase) * d[k];
  }
  CVector yp = CVector::Zero(static_cast<Eigen::Index>(j));
  yp.head(y.size()) = y;
  return make_state_prep_pair(c, d, beta, yp);
}

StatePrepPair make_state_prep_pair(const CVector& c, const CVector& d, double beta,
                                   const CVector& y) {
  if (c.size() != d.size() || !lattice::is_power_of_two(static_cast<std::size_t>(c.size())))
    throw std::invalid_argument("make_state_prep_pair: c, d must share a power-of-two length");
  StatePrepPair p;
  p.P_L = unitary_with_first_column(c);
  p.P_R = unitary_with_first_column(d);
  p.beta = beta;
  p.y = CVector::Zero(c.size());
  p.y.head(std::min(y.size(), c.size())) = y.head(std::min(y.size(), c.size()));
  return p;
}

BlockEncoding be_lcu(const CVector& y, const std::vector<BlockEncoding>& encodings,
                     const StatePrepPair& prep) {
  if (encodings.empty()) throw std::invalid_argument("be_lcu: no operands");
  const std::size_t b = prep.qubits();
  const std::size_t J = pow2(b);
  if (encodings.size() > J)
    throw std::invalid_argument("be_lcu: " + std::to_string(encodings.size()) +
                                " operands exceed " + std::to_string(J) + " select slots");
  const BlockEncoding& e0 = encodings.front();
  for (std::size_t k = 1; k < encodings.size(); ++k) {
    const BlockEncoding& ek = encodings[k];
    if (ek.m != e0.m || ek.system_dim != e0.system_dim ||
        std::abs(ek.alpha - e0.alpha) > 1e-12 * std::max(1.0, e0.alpha)) {
      throw std::invalid_argument("be_lcu: operand " + std::to_string(k) +
                                  " has constants incompatible with operand 0");
    }
  }
  if (static_cast<std::size_t>(y.size()) > J)
    throw std::invalid_argument("be_lcu: more coefficients than select slots");
  const std::size_t rest = pow2(e0.m) * e0.system_dim;
  std::vector<ops::Operator> sel;
  for (std::size_t k = 0; k < J; ++k)
    sel.push_back(k < encodings.size() ? encodings[k].U : ops::identity(rest));
  BlockEncoding out;
  out.U = ops::product({ops::tensor(ops::dense(prep.P_L.adjoint()), ops::identity(rest)),
                        ops::direct_sum(sel),
                        ops::tensor(ops::dense(prep.P_R), ops::identity(rest))});
  out.alpha = e0.alpha * prep.beta;
  out.m = e0.m + b;
  out.epsilon = e0.alpha * prep.delta() + e0.alpha * prep.beta * e0.epsilon;
  out.system_dim = e0.system_dim;
  std::vector<ops::Operator> terms;
  std::vector<cplx> coeffs;
  for (std::size_t k = 0; k < encodings.size() && k < static_cast<std::size_t>(y.size()); ++k) {
    if (y[static_cast<Eigen::Index>(k)] == cplx{0.0, 0.0}) continue;
    terms.push_back(encodings[k].target);
    coeffs.push_back(y[static_cast<Eigen::Index>(k)]);
  }
  out.target = terms.empty() ? ops::zero(e0.system_dim, e0.system_dim)
                             : ops::sum(std::move(terms), std::move(coeffs));
  out.label = "LCU[" + std::to_string(encodings.size()) + "]";
  return out;
}

BlockEncoding be_block_diagonal(const std::vector<BlockEncoding>& encodings, std::string label) {
  if (encodings.empty()) throw std::invalid_argument("be_block_diagonal: no operands");
  const BlockEncoding& e0 = encodings.front();
  for (std::size_t k = 1; k < encodings.size(); ++k) {
    const BlockEncoding& ek = encodings[k];
    if (ek.m != e0.m || ek.system_dim != e0.system_dim ||
        std::abs(ek.alpha - e0.alpha) > 1e-12 * std::max(1.0, e0.alpha)) {
      throw std::invalid_argument("be_block_diagonal: operand " + std::to_string(k) +
                                  " has constants incompatible with operand 0");
    }
  }
  const std::size_t K = next_pow2(encodings.size());
  std::vector<BlockEncoding> ops_in = encodings;
  std::size_t m = e0.m;
  if (K > encodings.size() && m == 0) {
    m = 1;
    for (auto& e : ops_in) e = be_pad_ancillas(e, 1);
  }
  const std::size_t s = e0.system_dim;
  const std::size_t a = pow2(m);
  std::vector<ops::Operator> sel;
  std::vector<ops::Operator> targets;
  for (std::size_t k = 0; k < K; ++k) {
    if (k < ops_in.size()) {
      sel.push_back(ops_in[k].U);
      targets.push_back(ops_in[k].target);
    } else {
      CMatrix x(2, 2);
      x << 0.0, 1.0, 1.0, 0.0;
      sel.push_back(ops::tensor(ops::dense(x), ops::identity(a / 2 * s)));
      targets.push_back(ops::zero(s, s));
    }
  }
  // W acts on [k][a][s]; the encoding layout is [a][k][s].
  const ops::Operator w = ops::direct_sum(sel);
  BlockEncoding out;
  if (K == 1) {
    out.U = w;
  } else {
    const ops::Operator r = ops::tensor(ops::swap_registers(K, a), ops::identity(s));
    out.U = ops::product({r, w, r.adjoint()});
  }
  out.alpha = e0.alpha;
  out.m = m;
  double eps = 0.0;
  for (const auto& e : encodings) eps = std::max(eps, e.epsilon);
  out.epsilon = eps;
  out.system_dim = K * s;
  out.target = ops::direct_sum(targets);
  out.label = label.empty() ? "blockdiag[" + std::to_string(encodings.size()) + "]"
                            : std::move(label);
  return out;
}

BlockEncoding be_Eij(std::size_t i, std::size_t j, std::size_t width) {
  const std::size_t w = pow2(width);
  if (i >= w || j >= w)
    throw std::invalid_argument("be_Eij: index out of range for a " + std::to_string(width) +
                                "-qubit register");
  // Flip the flag unless reg == j, then reg ^= i ^ j.
  std::vector<std::size_t> map(2 * w);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t k = 0; k < w; ++k) {
      const std::size_t na = a ^ (k == j ? 0u : 1u);
      const std::size_t nk = k ^ (i ^ j);
      map[a * w + k] = na * w + nk;
    }
  }
  CMatrix t = CMatrix::Zero(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w));
  t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  BlockEncoding be;
  be.U = ops::permutation(std::move(map));
  be.alpha = 1.0;
  be.m = 1;
  be.system_dim = w;
  be.target = ops::dense(t);
  be.label = "E" + std::to_string(i) + std::to_string(j);
  be.alpha_paper = 1.0;
  be.m_paper_bound = 1;
  return be;
}

BlockEncoding be_E() {
  BlockEncoding be = be_Eij(0, 0, 2);
  be.label = "E";
  return be;
}

CMatrix hadamard() {
  CMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  return h;
}

BlockEncoding be_D() {
  const CMatrix h = hadamard();
  CMatrix hh(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) hh(2 * a + b, 2 * c + d) = h(a, c) * h(b, d);
  BlockEncoding be = be_rescale(be_product(be_E(), be_unitary(ops::dense(hh), "H⊗H")), 2.0);
  CMatrix d = CMatrix::Zero(4, 4);
  d.row(0).setOnes();
  be.target = ops::dense(d);
  return be_relabel(be, "D", 2.0, 1);
}

EncodingCheck verify_encoding(const BlockEncoding& be, const VerifyOptions& opts,
                              const std::optional<ops::Operator>& reference) {
  EncodingCheck c;
  c.label = be.label;
  c.alpha_reported = be.alpha;
  c.m_actual = be.m;
  if (be.alpha_paper) {
    c.has_alpha_paper = true;
    c.alpha_paper = *be.alpha_paper;
    c.alpha_matches = std::abs(be.alpha - c.alpha_paper) <= opts.alpha_rel_tol * c.alpha_paper;
  }
  if (be.m_paper_bound) {
    c.has_m_paper_bound = true;
    c.m_paper_bound = *be.m_paper_bound;
    c.m_within_bound = be.m <= c.m_paper_bound;
  }
  ops::UnitarityOptions uo;
  uo.exhaustive_limit = opts.exhaustive_unitary_limit;
  uo.probes = opts.probes;
  uo.seed = opts.seed;
  uo.batch = column_chunk(be.dim());
  const auto ur = ops::verify_unitary(be.U, opts.tol, uo);
  c.unitarity_defect = ur.defect;
  c.exhaustive_unitarity = ur.exhaustive;

  const ops::Operator ref = reference ? *reference : be.target;
  if (ref.rows() != be.system_dim || ref.cols() != be.system_dim)
    throw std::invalid_argument("verify_encoding: reference dims do not match the system");
  const std::size_t s = be.system_dim;
  const std::size_t d = be.dim();
  if (s <= opts.dense_block_limit) {
    c.exhaustive_block = true;
    double sq = 0.0;
    const std::size_t chunk = column_chunk(d);
    for (std::size_t start = 0; start < s; start += chunk) {
      const std::size_t w = std::min(chunk, s - start);
      CMatrix xs = CMatrix::Zero(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(w));
      for (std::size_t k = 0; k < w; ++k)
        xs(static_cast<Eigen::Index>(start + k), static_cast<Eigen::Index>(k)) = 1.0;
      CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(w));
      x.topRows(static_cast<Eigen::Index>(s)) = xs;
      const CMatrix y = be.U.apply_columns(x);
      const CMatrix diff = be.alpha * y.topRows(static_cast<Eigen::Index>(s)) - ref.apply_columns(xs);
      sq += diff.squaredNorm();
    }
    c.block_error = std::sqrt(sq);
  } else {
    double worst = 0.0;
    for (std::size_t k = 0; k < opts.probes; ++k) {
      const CVector v = ops::random_unit_vector(s, opts.seed + 7919 * (k + 1));
      worst = std::max(worst, (be_apply_block(be, v) - ref.apply(v)).norm());
    }
    c.block_error = worst;
  }
  c.pass = ur.defect <= opts.tol && c.block_error <= be.epsilon + opts.tol && c.alpha_matches &&
           c.m_within_bound;
  return c;
}

void write_encoding_report_csv(std::ostream& out, const std::vector<EncodingCheck>& rows) {
  csv::Writer w(out);
  w.row({"label", "alpha_reported", "alpha_paper_bound", "m_actual", "m_paper_bound",
         "unitarity_defect", "block_error", "pass"});
  for (const auto& r : rows) {
    w.cell(r.label).cell(r.alpha_reported);
    if (r.has_alpha_paper) w.cell(r.alpha_paper); else w.cell("");
    w.cell(r.m_actual);
    if (r.has_m_paper_bound) w.cell(r.m_paper_bound); else w.cell("");
    w.cell(r.unitarity_defect).cell(r.block_error).cell(r.pass);
    w.end_row();
  }
}

}  // namespace be
}  // namespace qlbm
