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

#include "qlbm/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "qlbm/csv.hpp"
#include "qlbm/lattice.hpp"
#include "qlbm/lbm_encodings.hpp"

namespace qlbm {
namespace dilation {

namespace {

std::size_t pow2(std::size_t k) { return std::size_t{1} << k; }

// Diagonal projector onto ancilla |0⟩ (zero_block) or its complement.
ops::Operator ancilla_projector(std::size_t m, bool zero_block) {
  std::vector<double> d(pow2(m), zero_block ? 0.0 : 1.0);
  d[0] = zero_block ? 1.0 : 0.0;
  return ops::diagonal(d);
}

void check_add(const ops::Operator& add) {
  if (!add.valid() || !add.is_square() || !lattice::is_power_of_two(add.rows()))
    throw std::invalid_argument("relocation: ADD must be square on a power-of-two register");
}

CVector pad_to(const CVector& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) > dim) {
    throw std::invalid_argument("initial state has length " + std::to_string(v.size()) +
                                ", system dimension is " + std::to_string(dim));
  }
  CVector out = CVector::Zero(static_cast<Eigen::Index>(dim));
  out.head(v.size()) = v;
  return out;
}

void check_encodings(const std::vector<be::BlockEncoding>& encs) {
  if (encs.empty()) throw std::invalid_argument("dilated_run: no encodings");
  for (const auto& e : encs) {
    if (e.m != encs.front().m) {
      throw std::invalid_argument("dilated_run: mixed ancilla widths (" + std::to_string(e.m) +
                                  " vs " + std::to_string(encs.front().m) + ")");
    }
    if (e.system_dim != encs.front().system_dim)
      throw std::invalid_argument("dilated_run: mixed system dimensions");
    if (!e.target.valid())
      throw std::invalid_argument("dilated_run: encoding '" + e.label + "' has no target");
  }
}

}  // namespace

ops::Operator add_operator(std::size_t n_t) {
  if (n_t == 0) throw std::invalid_argument("add_operator: n_t must be at least 1");
  const std::size_t d = pow2(n_t);
  std::vector<std::size_t> map(d);
  for (std::size_t c = 0; c < d; ++c) map[c] = (c + 1) % d;
  return ops::permutation(std::move(map));
}

ops::Operator relocation(const ops::Operator& add, std::size_t m, std::size_t system_dim) {
  check_add(add);
  const ops::Operator sys = ops::identity(system_dim);
  const ops::Operator undo =
      ops::sum({ops::tensor({add.adjoint(), ancilla_projector(m, true), sys}),
                ops::tensor({ops::identity(add.rows()), ancilla_projector(m, false), sys})});
  return ops::product({undo, ops::tensor(add, ops::identity(pow2(m) * system_dim))});
}

ops::Operator relocation_direct(const ops::Operator& add, std::size_t m,
                                std::size_t system_dim) {
  check_add(add);
  const ops::Operator sys = ops::identity(system_dim);
  return ops::sum({ops::tensor({ops::identity(add.rows()), ancilla_projector(m, true), sys}),
                   ops::tensor({add, ancilla_projector(m, false), sys})});
}

std::size_t counter_qubits(std::size_t steps) {
  std::size_t n = 1;
  while (pow2(n) < steps + 1) ++n;
  return n;
}

CVector DilatedState::block(std::size_t c, std::size_t a) const {
  const auto off = static_cast<Eigen::Index>(c * block_dim() + a * system_dim);
  return psi.segment(off, static_cast<Eigen::Index>(system_dim));
}

double DilatedState::counter_norm(std::size_t c) const {
  return psi.segment(static_cast<Eigen::Index>(c * block_dim()),
                     static_cast<Eigen::Index>(block_dim()))
      .norm();
}

DilatedRunResult dilated_run(const CVector& psi0, const std::vector<be::BlockEncoding>& encodings,
                             const DilatedRunOptions& opts) {
  check_encodings(encodings);
  const std::size_t n_steps = encodings.size();
  DilatedRunResult res;
  DilatedState& st = res.state;
  st.n_t = opts.n_t == 0 ? counter_qubits(n_steps) : opts.n_t;
  if (pow2(st.n_t) < n_steps + 1) {
    throw std::invalid_argument("dilated_run: 2^n_t = " + std::to_string(pow2(st.n_t)) +
                                " < N_t + 1 = " + std::to_string(n_steps + 1));
  }
  st.m = encodings.front().m;
  st.system_dim = encodings.front().system_dim;
  const std::size_t total = st.counter_dim() * st.block_dim();
  if (total > opts.max_amplitudes) {
    throw std::length_error("dilated_run: " + std::to_string(total) +
                            " amplitudes exceed the cap of " +
                            std::to_string(opts.max_amplitudes));
  }
  const CVector v0 = pad_to(psi0, st.system_dim);
  const double norm0 = v0.norm();
  if (!(norm0 > 0.0)) throw std::invalid_argument("dilated_run: zero initial state");

  st.psi = CVector::Zero(static_cast<Eigen::Index>(total));
  st.psi.head(static_cast<Eigen::Index>(st.system_dim)) = v0 / norm0;

  const ops::Operator S = relocation(add_operator(st.n_t), st.m, st.system_dim);
  const std::size_t bd = st.block_dim();
  CVector tmp(static_cast<Eigen::Index>(total));

  auto record = [&](std::size_t k) {
    StepRecord r;
    r.step = k;
    double sq = 0.0;
    for (std::size_t c = 0; c < st.counter_dim(); ++c) {
      const double nc = st.counter_norm(c);
      r.counter_norms.push_back(nc);
      sq += nc * nc;
      if (c > k) {
        const auto seg = st.psi.segment(static_cast<Eigen::Index>(c * bd),
                                        static_cast<Eigen::Index>(bd));
        r.structure_defect = std::max(r.structure_defect, seg.cwiseAbs().maxCoeff());
      } else if (c >= 1) {
        r.failure_reentry = std::hypot(r.failure_reentry, st.block(c, 0).norm());
      }
    }
    if (st.m > 0) {
      const auto seg = st.psi.segment(static_cast<Eigen::Index>(st.system_dim),
                                      static_cast<Eigen::Index>(bd - st.system_dim));
      r.structure_defect = std::max(r.structure_defect, seg.cwiseAbs().maxCoeff());
    }
    r.success_prob_running = st.block(0, 0).squaredNorm();
    r.norm_drift = std::abs(std::sqrt(sq) - 1.0);
    res.max_structure_defect = std::max(res.max_structure_defect, r.structure_defect);
    res.max_norm_drift = std::max(res.max_norm_drift, r.norm_drift);
    if (opts.record_steps) res.steps.push_back(std::move(r));
  };

  record(0);
  CVector exact = v0;
  for (std::size_t j = 0; j < n_steps; ++j) {
    const auto& e = encodings[j];
    // Only counters 0..j are occupied before step j + 1.
    const std::size_t live = std::min(j + 1, st.counter_dim());
    tmp.setZero();
    e.U.apply_strided(st.psi.data(), tmp.data(), live, 1);
    S.apply_strided(tmp.data(), st.psi.data(), 1, 1);
    st.step = j + 1;
    res.alpha_product *= e.alpha;
    exact = e.target.apply(exact);
    record(j + 1);
  }

  res.success_prob = st.block(0, 0).squaredNorm();
  res.psi_T_exact = exact;
  const double ratio = exact.norm() / norm0;
  res.predicted_prob = ratio * ratio / (res.alpha_product * res.alpha_product);
  res.prob_error = std::abs(res.success_prob - res.predicted_prob);
  res.prob_matches = res.prob_error <= opts.tol;
  res.psi_T_estimate = st.block(0, 0) * (res.alpha_product * norm0);
  res.estimate_error = (res.psi_T_estimate - exact).norm();
  return res;
}

NaiveRunResult naive_run(const CVector& psi0, const std::vector<be::BlockEncoding>& encodings) {
  check_encodings(encodings);
  const std::size_t sd = encodings.front().system_dim;
  const CVector v0 = pad_to(psi0, sd);
  const double norm0 = v0.norm();
  if (!(norm0 > 0.0)) throw std::invalid_argument("naive_run: zero initial state");
  NaiveRunResult res;
  CVector state = v0 / norm0;
  double cumulative = 1.0;
  double scale = norm0;
  for (const auto& e : encodings) {
    CVector full = CVector::Zero(static_cast<Eigen::Index>(e.dim()));
    full.head(static_cast<Eigen::Index>(sd)) = state;
    const CVector out = e.U.apply(full);
    const CVector kept = out.head(static_cast<Eigen::Index>(sd));
    const double p = kept.squaredNorm();
    res.per_step.push_back(p);
    cumulative *= p;
    res.cumulative.push_back(cumulative);
    if (!(p > 0.0)) {
      state.setZero();
      scale = 0.0;
      break;
    }
    const double kn = std::sqrt(p);
    state = kept / kn;
    scale *= kn * e.alpha;
  }
  res.psi_T_estimate = state * scale;
  return res;
}

void write_run_csv(std::ostream& out, const DilatedRunResult& result) {
  csv::Writer w(out);
  w.cell("step");
  for (std::size_t c = 0; c < result.state.counter_dim(); ++c)
    w.cell("counter_" + std::to_string(c));
  w.cell("success_prob_running");
  w.end_row();
  for (const auto& r : result.steps) {
    w.cell(r.step);
    for (double v : r.counter_norms) w.cell(v);
    w.cell(r.success_prob_running);
    w.end_row();
  }
}

double usva_query_count(double alpha, double s, double delta, double epsilon) {
  if (!(alpha > 0.0 && s > 0.0 && delta > 0.0 && delta < 1.0 && epsilon > 0.0))
    throw std::invalid_argument("usva_query_count: parameters out of range");
  return alpha / (delta * s) * std::log(alpha / (s * epsilon));
}

UsvaResult usva(const be::BlockEncoding& be, double s, double delta, double epsilon) {
  if (be.epsilon != 0.0) throw std::invalid_argument("usva: the input encoding must be exact");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("usva: delta outside (0, 1)");
  if (!(s > 0.0)) throw std::invalid_argument("usva: s must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("usva: epsilon must be positive");

  const CMatrix A = be::be_extract(be);
  Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd sigma = svd.singularValues() * ((1.0 - delta) / s);

  UsvaResult res;
  constexpr double kClampTol = 1e-12;
  std::vector<Eigen::Index> clamped;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    res.max_scaled_sigma = std::max(res.max_scaled_sigma, sigma[i]);
    if (sigma[i] > 1.0 + kClampTol) clamped.push_back(i);
    sigma[i] = std::min(sigma[i], 1.0);
  }
  res.clamped = !clamped.empty();
  res.clamped_directions.resize(A.cols(), static_cast<Eigen::Index>(clamped.size()));
  for (std::size_t k = 0; k < clamped.size(); ++k) {
    res.clamped_indices.push_back(static_cast<std::size_t>(clamped[k]));
    res.clamped_directions.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(clamped[k]);
  }

  const CMatrix block =
      svd.matrixU() * sigma.cast<cplx>().asDiagonal() * svd.matrixV().adjoint();
  const ops::Operator W = ops::unitary_completion(block);

  be::BlockEncoding out;
  out.U = ops::tensor(ops::identity(pow2(be.m)), W);
  out.alpha = s / (1.0 - delta);
  out.m = be.m + 1;
  out.epsilon = epsilon * s;
  out.system_dim = be.system_dim;
  out.target = be.target;
  out.label = "usva(" + be.label + ")";
  out.alpha_paper = out.alpha;
  out.m_paper_bound = be.m + 1;
  res.encoding = std::move(out);
  res.query_count = usva_query_count(be.alpha, s, delta, epsilon);
  return res;
}

std::size_t check_amplification_inequality(std::size_t lo, std::size_t hi) {
  for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; ++n) {
    const double N = static_cast<double>(n);
    // Logs of both sides; the gap is about 1/(2N), far above rounding.
    const double lhs = N * std::log1p(-1.0 / N);
    const double rhs = -1.0 / (1.0 - 1.0 / N);
    if (lhs < rhs) return n;
  }
  return 0;
}

ComplexityReport complexity_report(std::size_t n_t, double epsilon, double norm_ratio,
                                   double omega) {
  if (n_t < 2) throw std::invalid_argument("complexity_report: N_t must be at least 2");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("complexity_report: epsilon outside (0, 1)");
  if (!(norm_ratio > 0.0))
    throw std::invalid_argument("complexity_report: norm ratio must be positive");
  ComplexityReport r;
  const double N = static_cast<double>(n_t);
  r.algorithm = "time-marching";
  r.n_t = n_t;
  r.epsilon = epsilon;
  r.norm_ratio = norm_ratio;
  r.delta = 1.0 / N;
  r.alpha_M = be::alpha_M(omega);
  r.epsilon_step = epsilon / (std::numbers::e * N);
  r.amplification_floor = std::pow(1.0 - r.delta, N);
  r.amplification_bound = std::exp(-1.0 / (1.0 - 1.0 / N));
  r.amplification_inequality_holds = r.amplification_floor >= r.amplification_bound;
  r.log_argument = N / epsilon;
  r.queries_per_step = N * std::log(r.log_argument);
  r.repetitions = norm_ratio;
  r.queries_per_oracle = r.repetitions * r.queries_per_step;
  r.total_queries = r.repetitions * N * r.queries_per_step;
  r.usva_queries_per_step = usva_query_count(r.alpha_M, 1.0, r.delta, r.epsilon_step);
  r.per_step_formula = "N_t*ln(N_t/eps)";
  r.total_formula = "g*N_t*per_step; per_oracle = g*per_step";
  r.constants = "all big-O constants set to 1; g = norm_ratio";
  return r;
}

}  // namespace dilation
}  // namespace qlbm
