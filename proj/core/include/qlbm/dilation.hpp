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
#include <ostream>
#include <string>
#include <vector>

#include "qlbm/block_encoding.hpp"
#include "qlbm/structured_ops.hpp"

// Measurement-free multi-step evolution by dilating unitarization. The
// dilated register is [counter (n_t qubits)] ⊗ [ancilla (m)] ⊗ [system],
// counter most significant.
namespace qlbm {
namespace dilation {

// |c⟩ → |c + 1 mod 2^{n_t}⟩.
ops::Operator add_operator(std::size_t n_t);

// S = (ADD† ⊗ |0⟩⟨0| ⊗ I + I ⊗ Σ_{j≠0}|j⟩⟨j| ⊗ I)(ADD ⊗ I ⊗ I).
ops::Operator relocation(const ops::Operator& add, std::size_t m, std::size_t system_dim);
// I ⊗ |0⟩⟨0| ⊗ I + ADD ⊗ Σ_{j≠0}|j⟩⟨j| ⊗ I, the defining direct-sum form.
ops::Operator relocation_direct(const ops::Operator& add, std::size_t m, std::size_t system_dim);

// Smallest n_t ≥ 1 with 2^{n_t} ≥ steps + 1.
std::size_t counter_qubits(std::size_t steps);

struct DilatedState {
  CVector psi;
  std::size_t n_t = 1;
  std::size_t m = 0;
  std::size_t system_dim = 1;
  std::size_t step = 0;

  std::size_t counter_dim() const { return std::size_t{1} << n_t; }
  std::size_t ancilla_dim() const { return std::size_t{1} << m; }
  std::size_t block_dim() const { return ancilla_dim() * system_dim; }
  // Counter c, ancilla a, system entries.
  CVector block(std::size_t c, std::size_t a) const;
  double counter_norm(std::size_t c) const;
};

struct StepRecord {
  std::size_t step = 0;
  std::vector<double> counter_norms;
  double success_prob_running = 0.0;
  double norm_drift = 0.0;
  // Largest amplitude where the flow map predicts zeros.
  double structure_defect = 0.0;
  // Norm of the ancilla-0 part of counters ≥ 1 (see dilated_run).
  double failure_reentry = 0.0;
};

struct DilatedRunOptions {
  // 0 picks counter_qubits(N_t).
  std::size_t n_t = 0;
  double tol = 1e-10;
  std::size_t max_amplitudes = std::size_t{1} << 24;
  bool record_steps = true;
};

struct DilatedRunResult {
  DilatedState state;
  double success_prob = 0.0;
  // (Π αⱼ)⁻² ‖ψ(T)‖² / ‖ψ(t₀)‖² from the encodings' targets.
  double predicted_prob = 0.0;
  double prob_error = 0.0;
  bool prob_matches = false;
  CVector psi_T_estimate;
  CVector psi_T_exact;
  double estimate_error = 0.0;
  double alpha_product = 1.0;
  double max_structure_defect = 0.0;
  double max_norm_drift = 0.0;
  std::vector<StepRecord> steps;
};

// Applies S·(I ⊗ U_j) for j = 1..N_t. The failure branches of later steps
// land on the same counter blocks as earlier ones once U_j mixes the ancilla,
// so failure_reentry measures how far the flow map departs from a strict
// one-branch-per-counter picture; only the zero blocks are asserted.
DilatedRunResult dilated_run(const CVector& psi0, const std::vector<be::BlockEncoding>& encodings,
                             const DilatedRunOptions& opts = {});

// Mid-circuit measurement scheme: each step postselects ancilla = 0 and
// renormalizes. per_step[j] is the conditional success probability of step j.
struct NaiveRunResult {
  std::vector<double> per_step;
  std::vector<double> cumulative;
  CVector psi_T_estimate;
};

NaiveRunResult naive_run(const CVector& psi0, const std::vector<be::BlockEncoding>& encodings);

// step, counter_0..counter_{2^{n_t}-1}, success_prob_running
void write_run_csv(std::ostream& out, const DilatedRunResult& result);

struct UsvaResult {
  be::BlockEncoding encoding;
  double query_count = 0.0;
  bool clamped = false;
  std::vector<std::size_t> clamped_indices;
  // Largest scaled singular value before clamping.
  double max_scaled_sigma = 0.0;
  // Right singular vectors of the clamped directions.
  CMatrix clamped_directions;
};

// Emulated singular value amplification: the result encodes A with α = s/(1−δ)
// and one more ancilla than be. Needs an exact encoding.
UsvaResult usva(const be::BlockEncoding& be, double s, double delta, double epsilon);

// (α/(δs))·ln(α/(sε)), constant 1.
double usva_query_count(double alpha, double s, double delta, double epsilon);

struct ComplexityReport {
  std::string algorithm;
  std::size_t n_t = 0;
  double epsilon = 0.0;
  double norm_ratio = 1.0;
  double delta = 0.0;
  double alpha_M = 0.0;
  double psi0_norm = 1.0;
  double queries_per_step = 0.0;
  // Queries to one step oracle over all repetitions, the headline count.
  double queries_per_oracle = 0.0;
  double total_queries = 0.0;
  double repetitions = 1.0;
  // Intermediate proof quantities.
  double epsilon_step = 0.0;
  double amplification_floor = 0.0;
  double amplification_bound = 0.0;
  bool amplification_inequality_holds = false;
  double log_argument = 0.0;
  // (α_M/δ)·ln(α_M/ε_step) with ‖Ξ_j‖ = 1.
  double usva_queries_per_step = 0.0;
  std::string per_step_formula;
  std::string total_formula;
  std::string constants;
};

// Time-marching accounting: per-step N_t·ln(N_t/ε), g = norm_ratio,
// per-oracle = g·per-step, total = g·N_t·per-step, δ = 1/N_t,
// ε_step = ε/(e·N_t).
ComplexityReport complexity_report(std::size_t n_t, double epsilon, double norm_ratio,
                                   double omega);

// (1 − 1/N)^N ≥ e^{−1/(1−1/N)} for N in [lo, hi]; returns the first failure or 0.
std::size_t check_amplification_inequality(std::size_t lo, std::size_t hi);

}  // namespace dilation
}  // namespace qlbm
