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
#include "qlbm/lbm_encodings.hpp"

namespace qlbm {
namespace {

const double kSqrt2 = std::sqrt(2.0);

CMatrix sample(Eigen::Index n, double scale) {
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = cplx(std::sin(1.0 + static_cast<double>(3 * i + j)),
                     std::cos(2.0 * static_cast<double>(i) - static_cast<double>(j)));
  return scale * a / Eigen::JacobiSVD<CMatrix>(a).singularValues()[0];
}

TEST(BlockEncoding, HadamardIsUnitary) {
  const CMatrix h = be::hadamard();
  EXPECT_LT((h * h.adjoint() - CMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_NEAR(h(0, 0).real(), 1.0 / kSqrt2, 1e-16);
}

TEST(BlockEncoding, DenseExtractsTarget) {
  const CMatrix a = sample(4, 0.8);
  const auto e = be::be_dense(a, 2.0);
  EXPECT_EQ(e.m, 1u);
  EXPECT_LT((be::be_extract(e) - a).norm(), 1e-12);
  EXPECT_TRUE(be::verify_encoding(e).pass);
}

TEST(BlockEncoding, ProductMultipliesAlpha) {
  const CMatrix a = sample(4, 0.9);
  const CMatrix b = sample(4, 0.5).adjoint();
  const auto e = be::be_product(be::be_dense(a, 1.5), be::be_dense(b, 2.0));
  EXPECT_DOUBLE_EQ(e.alpha, 3.0);
  EXPECT_EQ(e.m, 2u);
  EXPECT_LT((be::be_extract(e) - a * b).norm(), 1e-12);
}

TEST(BlockEncoding, TensorAndSum) {
  const CMatrix a = sample(2, 0.7);
  const CMatrix b = sample(2, 0.4);
  const auto t = be::be_tensor(be::be_dense(a, 1.0), be::be_dense(b, 1.0));
  CMatrix k(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  EXPECT_LT((be::be_extract(t) - k).norm(), 1e-12);

  const auto s = be::be_sum(be::be_dense(a, 1.0), be::be_dense(b, 1.0), 0.25, 0.75);
  EXPECT_LT((be::be_extract(s) - (0.25 * a + 0.75 * b)).norm(), 1e-12);
  EXPECT_TRUE(be::verify_encoding(s).pass);
}

TEST(BlockEncoding, DiagonalAndScalar) {
  CVector d(4);
  d << 0.5, -0.25, cplx(0.0, 0.5), 1.0;
  const auto e = be::be_diagonal(d);
  EXPECT_LT((be::be_extract(e) - CMatrix(d.asDiagonal())).norm(), 1e-14);
  const auto k = be::be_scalar(cplx(0.3, -0.4), 2);
  EXPECT_LT((be::be_extract(k) - cplx(0.3, -0.4) * CMatrix::Identity(2, 2)).norm(), 1e-14);
}

TEST(BlockEncoding, LcuWithPreparationPair) {
  CVector y(2);
  y << 0.6, 0.4;
  const auto prep = be::make_state_prep_pair(y);
  EXPECT_NEAR(prep.beta, 1.0, 1e-15);
  const CMatrix a = sample(2, 1.0);
  const CMatrix b = sample(2, 1.0).adjoint();
  const auto e = be::be_lcu(y, {be::be_dense(a, 1.0), be::be_dense(b, 1.0)}, prep);
  EXPECT_LT((be::be_extract(e) - (0.6 * a + 0.4 * b)).norm(), 1e-12);
}

TEST(BlockEncoding, BlockDiagonalStacksTargets) {
  const CMatrix a = sample(2, 0.5);
  const CMatrix b = sample(2, 0.9);
  const auto e = be::be_block_diagonal({be::be_dense(a, 1.0), be::be_dense(b, 1.0)});
  CMatrix expect = CMatrix::Zero(4, 4);
  expect.topLeftCorner(2, 2) = a;
  expect.bottomRightCorner(2, 2) = b;
  EXPECT_LT((be::be_extract(e) - expect).norm(), 1e-12);
}

TEST(BlockEncoding, VerifyCatchesWrongAlpha) {
  auto e = be::be_dense(sample(2, 0.5), 1.0);
  e.alpha_paper = 2.0;
  EXPECT_FALSE(be::verify_encoding(e).pass);
}

TEST(LbmEncodings, AlphaConstants) {
  EXPECT_NEAR(be::alpha_M(0.5), 18.0 * kSqrt2, 1e-13);
  EXPECT_NEAR(be::alpha_M(0.25), 18.0 * kSqrt2 * 3.0, 1e-12);
  EXPECT_NEAR(be::alpha_M(0.75), 18.0 * kSqrt2 * 3.0, 1e-12);
  EXPECT_EQ(be::n_M_bound(1), 21u);
  EXPECT_EQ(be::n_M_bound(3), 27u);
}

class LbmTower : public ::testing::Test {
 protected:
  lattice::GridSpec grid = lattice::GridSpec::make(2, 1);
  lattice::VelocitySet vs = lattice::d2q5();
  be::LbmContext ctx{lattice::VelocityField::per_node({{0.1, -0.2}, {-0.3, 0.05}}), vs, grid, 1.3,
                     0};
  be::VerifyOptions vo = [] {
    be::VerifyOptions o;
    o.probes = 4;
    return o;
  }();
};

TEST_F(LbmTower, CollisionEncodings) {
  const auto refs = be::lbm_references(ctx, 0.3 / 1.3);
  const auto a2 = be::be_Ae2(ctx, 1.0 / 1.3);
  EXPECT_DOUBLE_EQ(a2.alpha, 5.0);
  EXPECT_LE(a2.m, 1u + 5u);
  EXPECT_TRUE(be::verify_encoding(a2, vo).pass);
  const auto ae = be::be_Ae(ctx);
  EXPECT_DOUBLE_EQ(ae.alpha, 6.0);
  EXPECT_LE(ae.m, 1u + 6u);
  const auto chk = be::verify_encoding(ae, vo, refs.Ae);
  EXPECT_LT(chk.unitarity_defect, 1e-10);
  EXPECT_LT(chk.block_error, 1e-10);
}

TEST_F(LbmTower, StreamingAndMoment) {
  const auto refs = be::lbm_references(ctx, 0.3 / 1.3);
  const auto pe = be::be_Pe(vs, grid);
  EXPECT_DOUBLE_EQ(pe.alpha, 1.0);
  EXPECT_LT(be::verify_encoding(pe, vo, refs.Pe).block_error, 1e-12);
  const auto ei = be::be_EI(grid);
  EXPECT_DOUBLE_EQ(ei.alpha, 3.0);
  EXPECT_LE(ei.m, 3u);
  EXPECT_LT(be::verify_encoding(ei, vo, refs.EI).block_error, 1e-12);
}

TEST_F(LbmTower, CombinedEncoding) {
  const auto refs = be::lbm_references(ctx, 0.3 / 1.3);
  const auto me = be::be_Me(ctx);
  EXPECT_NEAR(me.alpha, 18.0 * kSqrt2, 1e-13);
  EXPECT_LE(me.m, 1u + 10u);
  const auto chk = be::verify_encoding(me, vo, refs.Me);
  EXPECT_LT(chk.unitarity_defect, 1e-10);
  EXPECT_LT(chk.block_error, 1e-10);
}

// w₁|1 + 3u| = 7/6 > 1 at u = 2; τ* < 1 has no valid A_e split.
TEST_F(LbmTower, RejectsPreconditionViolations) {
  be::LbmContext fast = ctx;
  fast.u = lattice::VelocityField::uniform({2.0, 0.0});
  EXPECT_THROW(be::be_Ae(fast), be::PreconditionError);
  be::LbmContext slow = ctx;
  slow.tau_star = 0.8;
  EXPECT_THROW(be::be_Ae(slow), be::PreconditionError);
}

}  // namespace
}  // namespace qlbm
