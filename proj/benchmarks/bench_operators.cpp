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

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qlbm/classical_lbm.hpp"
#include "qlbm/dilation.hpp"
#include "qlbm/lbm_encodings.hpp"
#include "qlbm/marching.hpp"

namespace {

using namespace qlbm;

std::vector<double> hill(const lattice::GridSpec& g) {
  std::vector<double> phi(g.n());
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double dx = static_cast<double>(i) - 0.5 * static_cast<double>(g.nx);
      const double dy = static_cast<double>(j) - 0.5 * static_cast<double>(g.ny);
      phi[j * g.nx + i] = 0.3 * std::exp(-(dx * dx + dy * dy) / 50.0);
    }
  return phi;
}

// One classical collide-and-stream step on an n×n D2Q5 grid.
void BM_ClassicalStep(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto grid = lattice::GridSpec::make(n, n);
  const auto vs = lattice::d2q5();
  const auto u = lattice::VelocityField::uniform({0.2, 0.2});
  auto f = lbm::init_equilibrium(hill(grid), u, vs, grid);
  for (auto _ : st) {
    f = lbm::stream(lbm::collide(f, u, 1.3));
    benchmark::DoNotOptimize(f.f.data());
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * grid.n()));
}
BENCHMARK(BM_ClassicalStep)->Arg(16)->Arg(64);

// Matrix-free application of M_ω on an n×n D2Q5 grid.
void BM_MarchingApply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto grid = lattice::GridSpec::make(n, n);
  const auto vs = lattice::d2q5();
  const auto u = lattice::VelocityField::uniform({0.2, 0.2});
  const double omega = marching::coupled_omega(1.3);
  const auto set = marching::build_M(u, 1.3, omega, vs, grid);
  auto f0 = lbm::init_equilibrium(hill(grid), u, vs, grid);
  CVector psi = marching::MarchingState::pack(f0, omega).psi;
  for (auto _ : st) {
    psi = set.M_omega.apply(psi);
    benchmark::DoNotOptimize(psi.data());
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * grid.n()));
}
BENCHMARK(BM_MarchingApply)->Arg(16)->Arg(64);

// Application of the M_ω block-encoding unitary on an N×1 D2Q5 grid.
void BM_EncodingApply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto grid = lattice::GridSpec::make(n, 1);
  const auto vs = lattice::d2q5();
  const auto u = lattice::VelocityField::uniform({0.1, 0.05});
  const be::LbmContext ctx{u, vs, grid, 1.3, 0};
  const auto enc = be::be_Momega(ctx, marching::coupled_omega(1.3));
  CVector v = ops::random_unit_vector(enc.dim(), 7);
  for (auto _ : st) {
    v = enc.U.apply(v);
    benchmark::DoNotOptimize(v.data());
  }
  st.counters["amplitudes"] = static_cast<double>(enc.dim());
}
BENCHMARK(BM_EncodingApply)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

// A full dilated run over `steps` dense encodings of a 16×16 contraction.
void BM_DilatedRun(benchmark::State& st) {
  const auto steps = static_cast<std::size_t>(st.range(0));
  CMatrix a = CMatrix::Zero(16, 16);
  for (Eigen::Index i = 0; i < 16; ++i) {
    a(i, i) = 0.6;
    a((i + 1) % 16, i) = 0.3;
  }
  std::vector<be::BlockEncoding> encs(steps, be::be_dense(a, 1.0));
  const CVector psi0 = ops::random_unit_vector(16, 11);
  dilation::DilatedRunOptions o;
  o.record_steps = false;
  for (auto _ : st) {
    auto r = dilation::dilated_run(psi0, encs, o);
    benchmark::DoNotOptimize(r.success_prob);
  }
}
BENCHMARK(BM_DilatedRun)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
