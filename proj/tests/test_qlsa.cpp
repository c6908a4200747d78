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

#include <gtest/gtest.h>

#include <cmath>

#include "qlbm/block_encoding.hpp"
#include "qlbm/marching.hpp"
#include "qlbm/qlsa.hpp"

namespace qlbm {
namespace {

ops::Operator scalar(double v) { return ops::dense(CMatrix::Constant(1, 1, cplx(v))); }

// L = [[1, 0], [−1, 1]] has singular values (1 ± √5)/2 in magnitude.
TEST(Qlsa, HandInstanceSingularValues) {
  const auto sys = qlsa::assemble({scalar(1.0)}, CVector::Constant(1, cplx(1.0)));
  const auto b = qlsa::singular_bounds(sys);
  EXPECT_TRUE(b.exact_svd);
  EXPECT_NEAR(b.sigma_max, 1.618033988749895, 1e-12);
  EXPECT_NEAR(b.sigma_min, 0.6180339887498949, 1e-12);
  EXPECT_TRUE(b.pass());
  EXPECT_DOUBLE_EQ(b.bound_min, 0.5);
}

TEST(Qlsa, ForwardSolveIsTheTrajectory) {
  const auto sys = qlsa::assemble({scalar(0.5), scalar(0.5), scalar(0.5)},
                                  CVector::Constant(1, cplx(1.0)));
  EXPECT_EQ(sys.total_blocks(), 4u);
  const auto sol = qlsa::solve_forward(sys);
  const double expect[] = {1.0, 0.5, 0.25, 0.125};
  ASSERT_EQ(sol.blocks.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(sol.blocks[k][0].real(), expect[k], 1e-15);
  EXPECT_LT(sol.residual, 1e-15);
}

TEST(Qlsa, PaddedBlocksCopyTheFinalState) {
  const auto sys = qlsa::assemble({scalar(0.5), scalar(0.5), scalar(0.5)},
                                  CVector::Constant(1, cplx(1.0)), true);
  EXPECT_EQ(sys.total_blocks(), 7u);
  const auto sol = qlsa::solve_forward(sys);
  for (std::size_t k = 3; k < 7; ++k) EXPECT_EQ(sol.blocks[k][0], cplx(0.125));
  const auto b = qlsa::singular_bounds(sys);
  EXPECT_EQ(b.chain_length, 6u);
  EXPECT_TRUE(b.pass());
}

// Plane-wave reduction against a dense SVD of the same padded system.
TEST(Qlsa, PeriodicBoundsMatchDense) {
  const auto vs = lattice::d1q3();
  const auto grid = lattice::GridSpec::make(8, 1);
  const double omega = 1.0 - 1.0 / 1.3;
  marching::Marcher marcher(lattice::VelocityField::uniform({0.1, 0.0}), 1.3, omega, vs, grid);
  const auto M = marcher.ops_for(0).M_omega;
  const auto sys = qlsa::assemble({M, M, M}, CVector::Ones(4 * 8), true);
  const auto dense = qlsa::singular_bounds(sys);
  ASSERT_FALSE(dense.periodic_reduction);
  qlsa::SingularBoundOptions po;
  po.dense_threshold = 0;
  po.periodic = qlsa::PeriodicLayout{4, 8, 1};
  const auto per = qlsa::singular_bounds(sys, po);
  ASSERT_TRUE(per.periodic_reduction);
  EXPECT_NEAR(per.sigma_max, dense.sigma_max, 1e-12);
  EXPECT_NEAR(per.sigma_min, dense.sigma_min, 1e-12);
  EXPECT_NEAR(per.max_B_norm, ops::spectral_norm(M).spectral_norm_estimate, 1e-10);
}

TEST(Qlsa, PeriodicSymbolRejectsVaryingOperator) {
  const auto vs = lattice::d1q3();
  const auto grid = lattice::GridSpec::make(4, 1);
  const auto u = lattice::VelocityField::per_node({{0.1, 0.0}, {0.0, 0.0}, {-0.1, 0.0}, {0.2, 0.0}});
  marching::Marcher marcher(u, 1.3, 0.25, vs, grid);
  EXPECT_TRUE(qlsa::periodic_symbol(marcher.ops_for(0).M_omega, {4, 4, 1}).empty());
  marching::Marcher rest(lattice::VelocityField::uniform({0.0, 0.0}), 1.3, 0.25, vs, grid);
  EXPECT_EQ(qlsa::periodic_symbol(rest.ops_for(0).M_omega, {4, 4, 1}).size(), 4u);
}

TEST(Qlsa, InverseInvertsL) {
  CMatrix a(2, 2);
  a << 0.3, cplx(0.0, 0.4), -0.2, 0.5;
  const auto sys = qlsa::assemble({ops::dense(a), ops::dense(a.adjoint())}, CVector::Ones(2), true);
  const CMatrix L = ops::materialize(sys.L());
  const CMatrix Li = ops::materialize(sys.L_inverse());
  EXPECT_LT((Li * L - CMatrix::Identity(L.rows(), L.cols())).norm(), 1e-13);
  EXPECT_LT((ops::materialize(sys.L_inverse().adjoint()) - Li.adjoint()).norm(), 1e-13);
}

TEST(Qlsa, AssembleChecksDimensions) {
  EXPECT_THROW(qlsa::assemble({scalar(1.0)}, CVector::Ones(2)), std::invalid_argument);
  EXPECT_THROW(qlsa::assemble({}, CVector::Ones(1)), std::invalid_argument);
}

TEST(Qlsa, HamtOracleStacksSteps) {
  const auto e1 = be::be_dense(CMatrix::Constant(1, 1, cplx(0.5)), 2.0);
  const auto e2 = be::be_dense(CMatrix::Constant(1, 1, cplx(-0.25)), 2.0);
  const auto h = qlsa::hamt_oracle({e1, e2});
  EXPECT_EQ(h.label, "HAM-T");
  const CMatrix blk = be::be_extract(h);
  EXPECT_NEAR(blk(0, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(blk(1, 1).real(), -0.25, 1e-14);
  const auto e3 = be::be_dense(CMatrix::Constant(1, 1, cplx(0.5)), 3.0);
  EXPECT_THROW(qlsa::hamt_oracle({e1, e3}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(qlsa::hamt_L_constant(3.0), 4.0);
}

TEST(Qlsa, ComplexityFormula) {
  const auto r = qlsa::qlsa_complexity(10, 1e-2, 1.0, 1.0, 0.5);
  EXPECT_NEAR(r.queries_per_step, 1934.2701578159947, 1e-9);
  EXPECT_NEAR(r.total_queries, 1934.2701578159947, 1e-9);
  EXPECT_NEAR(r.log_argument, 1000.0, 1e-9);
}

TEST(Qlsa, RepetitionCounts) {
  const auto sys = qlsa::assemble({scalar(1.0), scalar(1.0)}, CVector::Ones(1), true);
  const auto sol = qlsa::solve_forward(sys);
  // Ψ is five unit blocks: ‖Ψ‖ = √5.
  EXPECT_NEAR(qlsa::repetitions_paper(sol, 2), std::sqrt(5.0) / 3.0, 1e-14);
  EXPECT_NEAR(qlsa::repetitions_amplitude(sol, 2), std::sqrt(5.0) / std::sqrt(3.0), 1e-14);
}

}  // namespace
}  // namespace qlbm
