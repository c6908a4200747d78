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

#include "qlbm/qlsa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <unordered_map>
#include <stdexcept>

#include <Eigen/SVD>

#include "qlbm/csv.hpp"
#include "qlbm/lbm_encodings.hpp"

namespace qlbm {
namespace qlsa {

namespace {

using OpList = std::vector<ops::Operator>;

// L⁻¹ by block substitution over the subdiagonal chain.
class InverseNode final : public ops::OperatorNode {
 public:
  InverseNode(std::shared_ptr<const OpList> sub, std::size_t bd, bool adjoint)
      : OperatorNode((sub->size() + 1) * bd, (sub->size() + 1) * bd),
        sub_(std::move(sub)),
        bd_(bd),
        adjoint_(adjoint) {}

  ops::Kind kind() const override { return ops::Kind::custom; }

  void apply_strided(const cplx* in, cplx* out, std::size_t outer,
                     std::size_t inner) const override {
    const std::size_t n = rows();
    CVector y(static_cast<Eigen::Index>(n));
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t i = 0; i < inner; ++i) {
        const cplx* src = in + o * n * inner + i;
        for (std::size_t k = 0; k < n; ++k) y[static_cast<Eigen::Index>(k)] = src[k * inner];
        const CVector x = solve(y);
        cplx* dst = out + o * n * inner + i;
        for (std::size_t k = 0; k < n; ++k) dst[k * inner] = x[static_cast<Eigen::Index>(k)];
      }
    }
  }

  ops::Operator adjoint() const override {
    return ops::Operator(std::make_shared<InverseNode>(sub_, bd_, !adjoint_));
  }

  std::string describe() const override {
    return adjoint_ ? "Linv^H(" + std::to_string(rows()) + ")"
                    : "Linv(" + std::to_string(rows()) + ")";
  }

 private:
  CVector solve(const CVector& y) const {
    const auto bd = static_cast<Eigen::Index>(bd_);
    const std::size_t nb = sub_->size() + 1;
    CVector x = y;
    if (!adjoint_) {
      for (std::size_t k = 0; k + 1 < nb; ++k) {
        const auto s = static_cast<Eigen::Index>(k) * bd;
        x.segment(s + bd, bd) += (*sub_)[k].apply(x.segment(s, bd));
      }
    } else {
      for (std::size_t k = nb - 1; k-- > 0;) {
        const auto s = static_cast<Eigen::Index>(k) * bd;
        x.segment(s, bd) += (*sub_)[k].apply_adjoint(x.segment(s + bd, bd));
      }
    }
    return x;
  }

  std::shared_ptr<const OpList> sub_;
  std::size_t bd_;
  bool adjoint_;
};

// Exact σ_max, σ_min and max‖B_n‖ from the per-wavenumber blocks of L.
bool periodic_bounds(const GlobalSystem& sys, const PeriodicLayout& layout,
                     SingularBoundReport& rep) {
  const std::size_t c = layout.components;
  const std::size_t modes = layout.nx * layout.ny;
  if (c == 0 || modes == 0 || c * modes != sys.block_dim) return false;

  std::unordered_map<const ops::OperatorNode*, std::vector<CMatrix>> cache;
  std::vector<const std::vector<CMatrix>*> symbols;
  for (const auto& b : sys.B) {
    auto it = cache.find(&b.node());
    if (it == cache.end()) {
      auto sym = periodic_symbol(b, layout);
      if (sym.empty()) return false;
      it = cache.emplace(&b.node(), std::move(sym)).first;
    }
    symbols.push_back(&it->second);
  }

  const auto cc = static_cast<Eigen::Index>(c);
  const std::size_t nb = sys.total_blocks();
  double smax = 0.0;
  double smin = std::numeric_limits<double>::infinity();
  double bmax = 0.0;
  for (const auto& [node, sym] : cache)
    for (const auto& m : sym) bmax = std::max(bmax, Eigen::BDCSVD<CMatrix>(m).singularValues()[0]);
  CMatrix Lk = CMatrix::Identity(static_cast<Eigen::Index>(nb) * cc, static_cast<Eigen::Index>(nb) * cc);
  for (std::size_t k = 0; k < modes; ++k) {
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      auto blk = Lk.block(static_cast<Eigen::Index>(j + 1) * cc, static_cast<Eigen::Index>(j) * cc, cc, cc);
      if (j < sys.n_t)
        blk = -(*symbols[j])[k];
      else
        blk = -CMatrix::Identity(cc, cc);
    }
    const auto s = Eigen::BDCSVD<CMatrix>(Lk).singularValues();
    smax = std::max(smax, s[0]);
    smin = std::min(smin, s[s.size() - 1]);
  }
  rep.sigma_max = smax;
  rep.sigma_min = smin;
  rep.inverse_norm = 1.0 / smin;
  rep.max_B_norm = bmax;
  rep.exact_svd = true;
  rep.periodic_reduction = true;
  return true;
}

}  // namespace

std::vector<CMatrix> periodic_symbol(const ops::Operator& op, const PeriodicLayout& layout,
                                     double tol, std::uint64_t seed) {
  const std::size_t c = layout.components;
  const std::size_t nx = layout.nx;
  const std::size_t ny = layout.ny;
  const std::size_t n = nx * ny;
  if (c == 0 || n == 0 || op.rows() != c * n || op.cols() != c * n)
    throw std::invalid_argument("periodic_symbol: layout does not match the operator");
  const auto N = static_cast<Eigen::Index>(n);
  const auto cc = static_cast<Eigen::Index>(c);

  // Response to a unit impulse at node 0 of each component.
  CMatrix unit = CMatrix::Zero(cc * N, cc);
  for (Eigen::Index a = 0; a < cc; ++a) unit(a * N, a) = 1.0;
  const CMatrix kernel = op.apply_columns(unit);

  // A random probe must match the circular convolution with that kernel.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVector r(cc * N);
  for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = cplx(g(rng), g(rng));
  const CVector direct = op.apply(r);
  CVector conv = CVector::Zero(cc * N);
  for (std::size_t y = 0; y < n; ++y) {
    const std::size_t yx = y % nx;
    const std::size_t yy = y / nx;
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t d = ((x / nx + ny - yy) % ny) * nx + (x % nx + nx - yx) % nx;
      for (Eigen::Index a = 0; a < cc; ++a) {
        const cplx ra = r[a * N + static_cast<Eigen::Index>(y)];
        for (Eigen::Index b = 0; b < cc; ++b)
          conv[b * N + static_cast<Eigen::Index>(x)] += kernel(b * N + static_cast<Eigen::Index>(d), a) * ra;
      }
    }
  }
  if ((conv - direct).norm() > tol * std::max(1.0, direct.norm())) return {};

  std::vector<CMatrix> sym(n, CMatrix::Zero(cc, cc));
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t ky = 0; ky < ny; ++ky) {
    for (std::size_t kx = 0; kx < nx; ++kx) {
      CMatrix& s = sym[ky * nx + kx];
      for (std::size_t x = 0; x < n; ++x) {
        const double phase = two_pi * (static_cast<double>(kx * (x % nx)) / static_cast<double>(nx) +
                                       static_cast<double>(ky * (x / nx)) / static_cast<double>(ny));
        const cplx w = std::polar(1.0, -phase);
        s += w * kernel(Eigen::seqN(static_cast<Eigen::Index>(x), cc, N), Eigen::all);
      }
    }
  }
  return sym;
}

const ops::Operator& GlobalSystem::subdiagonal(std::size_t k) const {
  if (k + 1 >= total_blocks())
    throw std::out_of_range("subdiagonal: index " + std::to_string(k) + " out of range");
  return k < n_t ? B[k] : copy_block;
}

ops::Operator GlobalSystem::L() const {
  const std::size_t d = dim();
  std::vector<ops::Operator> terms{ops::identity(d)};
  std::vector<cplx> coeffs{1.0};
  for (std::size_t k = 0; k + 1 < total_blocks(); ++k) {
    terms.push_back(ops::embedding(subdiagonal(k), d, d, (k + 1) * block_dim, k * block_dim));
    coeffs.push_back(-1.0);
  }
  return ops::sum(std::move(terms), std::move(coeffs));
}

ops::Operator GlobalSystem::L_inverse() const {
  auto sub = std::make_shared<OpList>();
  for (std::size_t k = 0; k + 1 < total_blocks(); ++k) sub->push_back(subdiagonal(k));
  return ops::Operator(std::make_shared<InverseNode>(std::move(sub), block_dim, false));
}

CVector GlobalSystem::F() const {
  CVector f = CVector::Zero(static_cast<Eigen::Index>(dim()));
  f.head(static_cast<Eigen::Index>(block_dim)) = psi0;
  return f;
}

GlobalSystem assemble(std::vector<ops::Operator> B, const CVector& psi0, bool pad) {
  if (B.empty()) throw std::invalid_argument("assemble: at least one step is required");
  const std::size_t bd = static_cast<std::size_t>(psi0.size());
  for (std::size_t k = 0; k < B.size(); ++k) {
    if (B[k].rows() != bd || B[k].cols() != bd) {
      throw std::invalid_argument("assemble: B_" + std::to_string(k) + " is " +
                                  std::to_string(B[k].rows()) + "x" +
                                  std::to_string(B[k].cols()) + ", block_dim is " +
                                  std::to_string(bd));
    }
  }
  GlobalSystem sys;
  sys.n_t = B.size();
  sys.B = std::move(B);
  sys.psi0 = psi0;
  sys.padded = pad;
  sys.block_dim = bd;
  sys.copy_block = ops::identity(bd);
  return sys;
}

CVector SolveResult::stacked() const {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.size();
  CVector out(n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    out.segment(off, b.size()) = b;
    off += b.size();
  }
  return out;
}

SolveResult solve_forward(const GlobalSystem& sys) {
  SolveResult res;
  res.blocks.reserve(sys.total_blocks());
  res.blocks.push_back(sys.psi0);
  for (std::size_t k = 0; k + 1 < sys.total_blocks(); ++k)
    res.blocks.push_back(sys.subdiagonal(k).apply(res.blocks.back()));
  const CVector F = sys.F();
  const CVector r = sys.L().apply(res.stacked()) - F;
  const double fn = F.norm();
  res.residual = fn > 0.0 ? r.norm() / fn : r.norm();
  return res;
}

SingularBoundReport singular_bounds(const GlobalSystem& sys, const SingularBoundOptions& opts) {
  SingularBoundReport rep;
  rep.n_t = sys.n_t;
  rep.block_dim = sys.block_dim;
  rep.chain_length = sys.total_blocks() - 1;
  rep.bound_max = 2.0;
  rep.bound_min = 1.0 / static_cast<double>(rep.chain_length + 1);
  rep.inverse_bound = static_cast<double>(rep.chain_length + 1);

  // The periodic path also yields the exact max‖B_n‖.
  bool premise_done = false;
  if (opts.periodic && sys.dim() > opts.dense_threshold && periodic_bounds(sys, *opts.periodic, rep)) {
    premise_done = true;
  } else if (sys.dim() <= opts.dense_threshold) {
    const CMatrix L = ops::materialize(sys.L());
    Eigen::BDCSVD<CMatrix> svd(L);
    const auto& s = svd.singularValues();
    rep.sigma_max = s[0];
    rep.sigma_min = s[s.size() - 1];
    rep.inverse_norm = 1.0 / rep.sigma_min;
    rep.exact_svd = true;
  } else {
    ops::NormOptions no = opts.norm;
    no.dense_threshold = opts.dense_threshold;
    rep.sigma_max = ops::spectral_norm(sys.L(), no).spectral_norm_estimate;
    rep.inverse_norm = ops::spectral_norm(sys.L_inverse(), no).spectral_norm_estimate;
    rep.sigma_min = 1.0 / rep.inverse_norm;
  }
  if (opts.check_premise) {
    if (!premise_done)
      for (const auto& b : sys.B)
        rep.max_B_norm = std::max(rep.max_B_norm, ops::spectral_norm(b, opts.norm).spectral_norm_estimate);
    rep.premise_holds = rep.max_B_norm <= 1.0 + opts.tol;
  }
  rep.pass_max = rep.sigma_max <= rep.bound_max + opts.tol;
  rep.pass_min = rep.sigma_min >= rep.bound_min - opts.tol;
  rep.pass_inverse = rep.inverse_norm <= rep.inverse_bound + 1e-6;
  return rep;
}

void write_bounds_csv(std::ostream& out, const std::vector<SingularBoundReport>& rows) {
  csv::Writer w(out);
  w.row({"N_t", "block_dim", "sigma_max", "sigma_min", "bound_max", "bound_min", "pass"});
  for (const auto& r : rows) {
    w.cell(r.n_t);
    w.cell(r.block_dim);
    w.cell(r.sigma_max);
    w.cell(r.sigma_min);
    w.cell(r.bound_max);
    w.cell(r.bound_min);
    w.cell(r.pass());
    w.end_row();
  }
}

be::BlockEncoding hamt_oracle(const std::vector<be::BlockEncoding>& encodings) {
  if (encodings.empty()) throw std::invalid_argument("hamt_oracle: no encodings");
  const auto& first = encodings.front();
  for (const auto& e : encodings) {
    if (std::abs(e.alpha - first.alpha) > 1e-12 * std::max(1.0, first.alpha) ||
        e.m != first.m || e.system_dim != first.system_dim) {
      throw std::invalid_argument("hamt_oracle: heterogeneous constants (alpha " +
                                  std::to_string(e.alpha) + ", m " + std::to_string(e.m) +
                                  ") vs (alpha " + std::to_string(first.alpha) + ", m " +
                                  std::to_string(first.m) + ")");
    }
  }
  return be::be_block_diagonal(encodings, "HAM-T");
}

double hamt_L_constant(double alpha_B) { return alpha_B + 1.0; }

dilation::ComplexityReport qlsa_complexity(std::size_t n_t, double epsilon_prime,
                                           double psi0_norm, double norm_ratio, double omega) {
  if (n_t < 1) throw std::invalid_argument("qlsa_complexity: N_t must be at least 1");
  if (!(epsilon_prime > 0.0)) throw std::invalid_argument("qlsa_complexity: epsilon must be positive");
  if (!(psi0_norm > 0.0)) throw std::invalid_argument("qlsa_complexity: ‖ψ(t₀)‖ must be positive");
  if (!(norm_ratio > 0.0)) throw std::invalid_argument("qlsa_complexity: norm ratio must be positive");
  const double N = static_cast<double>(n_t);
  dilation::ComplexityReport r;
  r.algorithm = "qlsa";
  r.n_t = n_t;
  r.epsilon = epsilon_prime;
  r.norm_ratio = norm_ratio;
  r.psi0_norm = psi0_norm;
  r.alpha_M = be::alpha_M(omega);
  r.log_argument = N * psi0_norm / epsilon_prime;
  if (r.log_argument < 1.0)
    throw std::invalid_argument("qlsa_complexity: epsilon exceeds N_t·‖ψ(t₀)‖");
  r.epsilon_step = 1.0 / r.log_argument;
  r.queries_per_step = r.alpha_M * (N + 1.0) * std::log(r.log_argument);
  r.repetitions = norm_ratio;
  r.queries_per_oracle = r.repetitions * r.queries_per_step;
  r.total_queries = r.queries_per_oracle;
  r.per_step_formula = "alpha_M*(N_t+1)*ln(N_t*|psi0|/eps)";
  r.total_formula = "g*per_solve";
  r.constants = "all big-O constants set to 1; g = norm_ratio";
  return r;
}

double repetitions_paper(const SolveResult& sol, std::size_t n_t) {
  const double psiT = sol.blocks.at(n_t).norm();
  return sol.stacked().norm() / ((static_cast<double>(n_t) + 1.0) * psiT);
}

double repetitions_amplitude(const SolveResult& sol, std::size_t n_t) {
  const double psiT = sol.blocks.at(n_t).norm();
  const double copies = static_cast<double>(sol.blocks.size() - n_t);
  return sol.stacked().norm() / (std::sqrt(copies) * psiT);
}

}  // namespace qlsa
}  // namespace qlbm
