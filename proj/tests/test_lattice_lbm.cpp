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
#include <numeric>

#include "qlbm/classical_lbm.hpp"
#include "qlbm/lattice.hpp"

namespace qlbm {
namespace {

TEST(Lattice, WeightsAndVelocities) {
  const auto d2 = lattice::d2q5();
  ASSERT_EQ(d2.q(), 5u);
  EXPECT_DOUBLE_EQ(d2.w[0], 1.0 / 3.0);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_DOUBLE_EQ(d2.w[i], 1.0 / 6.0);
  const auto d1 = lattice::d1q3();
  ASSERT_EQ(d1.q(), 3u);
  EXPECT_DOUBLE_EQ(d1.w[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(d1.w[1] + d1.w[2], 1.0 / 3.0);
  EXPECT_THROW(lattice::velocity_set("d3q19"), std::invalid_argument);
}

TEST(Lattice, GridNeedsPowersOfTwo) {
  EXPECT_NO_THROW(lattice::GridSpec::make(8, 4));
  EXPECT_THROW(lattice::GridSpec::make(6, 1), std::invalid_argument);
  EXPECT_EQ(lattice::GridSpec::make(8, 4).qubits(), 5u);
  EXPECT_EQ(lattice::log2_exact(64), 6u);
}

TEST(Lattice, DiffusionCoefficient) {
  const auto g = lattice::GridSpec::make(4, 1);
  EXPECT_NEAR(lattice::diffusion_coefficient(1.3, g), 0.8 / 3.0, 1e-15);
  EXPECT_NEAR(lattice::diffusion_coefficient(0.8, g), 0.1, 1e-15);
  EXPECT_TRUE(lattice::diffusion_coefficient_checked(0.5, g).nonpositive);
}

TEST(Lattice, LowMachLimitIsOneThird) {
  const auto g = lattice::GridSpec::make(4, 4);
  const auto vs = lattice::d2q5();
  EXPECT_TRUE(lattice::check_low_mach(lattice::VelocityField::uniform({0.2, 0.2}), g, &vs).holds);
  const auto bad = lattice::check_low_mach(lattice::VelocityField::uniform({0.4, 0.0}), g, &vs);
  EXPECT_FALSE(bad.holds);
  EXPECT_NEAR(bad.limit, 1.0 / 3.0, 1e-15);
}

TEST(Lattice, EquilibriumMomentIsPhi) {
  const auto g = lattice::GridSpec::make(4, 4);
  const auto eq = lattice::equilibrium(0.7, {0.1, -0.2}, lattice::d2q5(), g);
  EXPECT_NEAR(lattice::moment_phi(eq.f), 0.7, 1e-15);
  EXPECT_FALSE(eq.negative);
}

TEST(Lattice, StreamingWrapsPeriodically) {
  const auto g = lattice::GridSpec::make(4, 1);
  const auto vs = lattice::d1q3();
  std::size_t plus = 0;
  for (std::size_t i = 0; i < vs.q(); ++i)
    if (vs.e[i][0] == 1) plus = i;
  EXPECT_EQ(lattice::stream_target(vs, g, plus, 3), 0u);
  EXPECT_EQ(lattice::stream_target(vs, g, plus, 1), 2u);
}

TEST(ClassicalLbm, MassIsConserved) {
  const auto g = lattice::GridSpec::make(16, 1);
  const auto vs = lattice::d1q3();
  const auto u = lattice::VelocityField::uniform({0.2, 0.0});
  std::vector<double> phi(16);
  for (std::size_t j = 0; j < 16; ++j) phi[j] = 1.0 + 0.1 * static_cast<double>(j % 5);
  const auto f0 = lbm::init_equilibrium(phi, u, vs, g);
  const auto t = lbm::run(f0, u, 0.8, 25);
  const double m0 = std::accumulate(phi.begin(), phi.end(), 0.0);
  const double m1 = std::accumulate(t.phi.back().begin(), t.phi.back().end(), 0.0);
  EXPECT_NEAR(m1, m0, 1e-12);
  EXPECT_EQ(t.regime, lbm::Regime::over_relaxation);
}

TEST(ClassicalLbm, UniformRestStateIsFixedPoint) {
  const auto g = lattice::GridSpec::make(4, 4);
  const auto vs = lattice::d2q5();
  const auto u = lattice::VelocityField::uniform({0.0, 0.0});
  const auto f0 = lbm::init_equilibrium(std::vector<double>(16, 0.3), u, vs, g);
  const auto t = lbm::run(f0, u, 1.3, 3);
  EXPECT_LT((t.states.back().f - f0.f).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ClassicalLbm, PureAdvectionAtFullRelaxationShiftsPeak) {
  // At τ* = 1 every step streams the equilibrium, whose first moment is φu.
  const auto g = lattice::GridSpec::make(32, 1);
  const auto vs = lattice::d1q3();
  const auto u = lattice::VelocityField::uniform({0.25, 0.0});
  std::vector<double> phi(32, 0.0);
  phi[8] = 1.0;
  const auto t = lbm::run(lbm::init_equilibrium(phi, u, vs, g), u, 1.0, 4);
  double centre = 0.0;
  for (std::size_t j = 0; j < 32; ++j) centre += static_cast<double>(j) * t.phi.back()[j];
  EXPECT_NEAR(centre, 8.0 + 4 * 0.25, 1e-12);
}

TEST(ClassicalLbm, RegimeClassification) {
  EXPECT_EQ(lbm::relaxation_regime(0.8), lbm::Regime::over_relaxation);
  EXPECT_EQ(lbm::relaxation_regime(1.0), lbm::Regime::full_relaxation);
  EXPECT_EQ(lbm::relaxation_regime(1.3), lbm::Regime::under_relaxation);
  EXPECT_EQ(lbm::relaxation_regime(0.4), lbm::Regime::unstable);
}

}  // namespace
}  // namespace qlbm
