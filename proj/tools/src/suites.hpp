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

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qlbm/lattice.hpp"
#include "qlbm/structured_ops.hpp"

// Invariant suites shared by `qlbm verify` and the acceptance binary.
namespace qlbm {
namespace suites {

struct CheckRow {
  std::string suite;
  std::string check;
  std::string params;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::vector<CheckRow> rows;

  bool pass() const;
  std::size_t failures() const;
  void add(CheckRow row) { rows.push_back(std::move(row)); }
  void append(const SuiteResult& other);
};

// suite, check, params, value, bound, pass
void write_rows_csv(std::ostream& out, const SuiteResult& r);

// Components uniform in [−limit, limit]; uy = 0 for 1D sets.
lattice::VelocityField random_field(const lattice::GridSpec& grid, const lattice::VelocitySet& vs,
                                    std::mt19937_64& rng, double limit = 1.0 / 3.0);
// A time-indexed field with one random table per step.
lattice::VelocityField random_field_sequence(const lattice::GridSpec& grid,
                                             const lattice::VelocitySet& vs, std::size_t steps,
                                             std::mt19937_64& rng, double limit = 1.0 / 3.0);
// A random matrix scaled to spectral norm `norm`.
CMatrix random_matrix(std::size_t rows, std::size_t cols, double norm, std::mt19937_64& rng);

struct RepresentationSuiteOptions {
  std::size_t configs = 50;
  std::size_t max_grid = 16;
  std::size_t max_steps = 20;
  std::vector<double> taus{0.8, 1.0, 1.3};
  // Velocity components are drawn from [−limit, limit].
  double limit = 0.3;
  double tol = 1e-11;
  std::uint64_t seed = 6;
};
// Marching trajectory against classical collide-and-stream, per population and
// per moment. Errors are relative to max(|x|, 1e-3·max|x|) so near-zero
// populations do not amplify rounding.
SuiteResult representation_suite(const RepresentationSuiteOptions& o);

struct NormSuiteOptions {
  std::string model = "d2q5";
  std::vector<double> omegas{0.3, 0.5, 0.6, 0.75};
  std::size_t samples = 100;
  std::size_t max_grid = 8;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};
// spectral_norm(M_ω) ≤ 1 + tol under τ* = 1/(1−ω) and the low-Mach bound,
// plus ‖B‖₁ = 1 in exact arithmetic on rational velocities.
SuiteResult norm_suite(const NormSuiteOptions& o);

struct BeSuiteOptions {
  std::size_t max_qubits = 3;
  bool include_2d = true;
  double tau_star = 1.3;
  double tol = 1e-10;
  // Random probes for the unitarity defect once exhaustive checking is too large.
  std::size_t unitarity_probes = 6;
  std::uint64_t seed = 2;
};
// Every encoding of the D2Q5 tower: unitarity, block error, α and ancillas.
SuiteResult be_suite(const BeSuiteOptions& o);

struct DilationSuiteOptions {
  std::size_t max_nodes = 8;
  std::size_t max_steps = 5;
  std::size_t random_sequences = 20;
  double tau_star = 1.3;
  double tol = 1e-10;
  std::uint64_t seed = 3;
};
// Success probabilities, marching agreement and flow-map zero blocks.
SuiteResult dilation_suite(const DilationSuiteOptions& o);

struct UsvaSuiteOptions {
  std::size_t matrices = 20;
  std::size_t max_dim = 32;
  double tol = 1e-10;
  std::uint64_t seed = 4;
};
SuiteResult usva_suite(const UsvaSuiteOptions& o);

struct QlsaSuiteOptions {
  std::size_t systems = 200;
  std::size_t max_steps = 32;
  std::size_t max_block_dim = 8;
  double tol = 1e-9;
  // Gauss Hill systems at the benchmark grids (slow in 2D).
  bool full_scale_benchmarks = false;
  std::uint64_t seed = 5;
};
// Singular-value bounds of L on random contractions, the hand N_t = 1
// instance, and benchmark-derived systems.
SuiteResult qlsa_suite(const QlsaSuiteOptions& o);

}  // namespace suites
}  // namespace qlbm
