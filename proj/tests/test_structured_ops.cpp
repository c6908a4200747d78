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
#include <random>

#include "qlbm/structured_ops.hpp"

namespace qlbm {
namespace {

CMatrix random_dense(Eigen::Index r, Eigen::Index c, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

TEST(StructuredOps, PermutationSendsEntryToItsMapIndex) {
  const auto p = ops::permutation({2, 0, 1});
  CVector v(3);
  v << 1.0, 2.0, 3.0;
  const CVector y = p.apply(v);
  EXPECT_EQ(y[0], cplx(2.0));
  EXPECT_EQ(y[1], cplx(3.0));
  EXPECT_EQ(y[2], cplx(1.0));
  EXPECT_EQ(p.adjoint().apply(y), v);
}

TEST(StructuredOps, TensorMatchesKronecker) {
  const CMatrix a = random_dense(2, 3, 1);
  const CMatrix b = random_dense(3, 2, 2);
  const CMatrix c = random_dense(2, 2, 3);
  const auto t = ops::tensor({ops::dense(a), ops::dense(b), ops::dense(c)});
  EXPECT_LT((ops::materialize(t) - kron(kron(a, b), c)).norm(), 1e-12);
}

TEST(StructuredOps, ProductAppliesRightmostFirst) {
  const CMatrix a = random_dense(3, 3, 4);
  const CMatrix b = random_dense(3, 3, 5);
  const auto p = ops::product({ops::dense(a), ops::dense(b)});
  EXPECT_LT((ops::materialize(p) - a * b).norm(), 1e-12);
}

TEST(StructuredOps, SumAndScaledCombineLinearly) {
  const CMatrix a = random_dense(4, 4, 6);
  const CMatrix b = random_dense(4, 4, 7);
  const auto s = ops::sum({ops::dense(a), ops::scaled(ops::dense(b), cplx(0.0, 2.0))},
                          {cplx(0.5), cplx(1.0)});
  EXPECT_LT((ops::materialize(s) - (0.5 * a + cplx(0.0, 2.0) * b)).norm(), 1e-12);
}

TEST(StructuredOps, DirectSumUnderTensorIsBlockDiagonalPerCopy) {
  const CMatrix a = random_dense(2, 2, 8);
  const CMatrix b = random_dense(3, 3, 9);
  CMatrix ds = CMatrix::Zero(5, 5);
  ds.topLeftCorner(2, 2) = a;
  ds.bottomRightCorner(3, 3) = b;
  const auto op = ops::tensor({ops::identity(3), ops::direct_sum({ops::dense(a), ops::dense(b)}),
                               ops::identity(2)});
  const CMatrix expect = kron(kron(CMatrix::Identity(3, 3), ds), CMatrix::Identity(2, 2));
  EXPECT_LT((ops::materialize(op) - expect).norm(), 1e-12);
}

TEST(StructuredOps, EmbeddingPlacesBlockAtOffset) {
  const CMatrix a = random_dense(2, 2, 10);
  const auto e = ops::tensor(ops::identity(2), ops::embedding(ops::dense(a), 4, 4, 1, 2));
  CMatrix inner = CMatrix::Zero(4, 4);
  inner.block(1, 2, 2, 2) = a;
  EXPECT_LT((ops::materialize(e) - kron(CMatrix::Identity(2, 2), inner)).norm(), 1e-12);
}

TEST(StructuredOps, SwapRegistersExchangesFactors) {
  const CMatrix a = random_dense(2, 2, 11);
  const CMatrix b = random_dense(3, 3, 12);
  const auto sw = ops::swap_registers(2, 3);
  const auto lhs = ops::product({sw, ops::tensor(ops::dense(a), ops::dense(b)), sw.adjoint()});
  EXPECT_LT((ops::materialize(lhs) - kron(b, a)).norm(), 1e-12);
}

TEST(StructuredOps, AdjointIsConjugateTranspose) {
  const CMatrix a = random_dense(3, 2, 13);
  const CMatrix b = random_dense(2, 4, 14);
  const auto op = ops::product(
      {ops::tensor(ops::dense(a), ops::identity(2)), ops::tensor(ops::dense(b), ops::identity(2))});
  EXPECT_LT((ops::materialize(op.adjoint()) - ops::materialize(op).adjoint()).norm(), 1e-12);
}

TEST(StructuredOps, SpectralNormDenseAndPowerIterationAgree) {
  CVector d(4);
  d << 3.0, -4.0, 1.0, cplx(0.0, 2.0);
  const auto op = ops::diagonal(d);
  EXPECT_NEAR(ops::spectral_norm(op).spectral_norm_estimate, 4.0, 1e-12);
  ops::NormOptions o;
  o.dense_threshold = 0;
  o.tol = 1e-12;
  const auto rep = ops::spectral_norm(op, o);
  EXPECT_EQ(rep.method, ops::NormMethod::power_iteration);
  EXPECT_NEAR(rep.spectral_norm_estimate, 4.0, 1e-8);
}

TEST(StructuredOps, UnitaryCompletionEmbedsContraction) {
  const CMatrix b = 0.5 * random_dense(3, 3, 15) / 3.0;
  ops::CompletionInfo info;
  const auto u = ops::unitary_completion(b, &info);
  EXPECT_FALSE(info.clamped);
  const CMatrix w = ops::materialize(u);
  EXPECT_LT((w.topLeftCorner(3, 3) - b).norm(), 1e-12);
  EXPECT_LT(ops::verify_unitary(u, 1e-12).defect, 1e-12);
}

TEST(StructuredOps, UnitaryCompletionRejectsExpansion) {
  EXPECT_THROW(ops::unitary_completion(2.0 * CMatrix::Identity(2, 2)), std::domain_error);
}

TEST(StructuredOps, VerifyUnitaryFlagsContraction) {
  const auto rep = ops::verify_unitary(ops::diagonal(std::vector<double>{1.0, 0.5}), 1e-10);
  EXPECT_FALSE(rep.is_unitary);
  EXPECT_GE(rep.defect, 0.5);
}

TEST(StructuredOps, MaterializeRespectsCap) {
  EXPECT_THROW(ops::materialize(ops::identity(64), 100), std::length_error);
}

}  // namespace
}  // namespace qlbm
