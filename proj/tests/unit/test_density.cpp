// Copyright 2026 The bellfield Authors
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

#include "bellfield/density.hpp"
#include "bellfield/errors.hpp"

namespace bellfield::quantum {
namespace {

DensityMatrix random_state(std::mt19937& rng, int photons) {
  std::normal_distribution<double> n(0.0, 1.0);
  const int dim = 1 << photons;
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(rho);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(DensityTest, ValidatesStates) {
  Matrix bad = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{bad}, NotAState);
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, NotAState);
  Matrix nonherm(2, 2);
  nonherm << 0.5, 0.5, 0, 0.5;
  EXPECT_THROW(DensityMatrix{nonherm}, NotAState);
  EXPECT_THROW(DensityMatrix{Matrix::Identity(3, 3) / 3.0}, NotAState);
  EXPECT_NEAR(DensityMatrix::maximally_mixed(2).trace(), 1.0, 1e-15);
}

TEST(DensityTest, GhzAndProductStates) {
  const PureState g = PureState::ghz(3);
  EXPECT_EQ(g.photons(), 3);
  EXPECT_NEAR(std::abs(g.amplitudes()(0)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(g.amplitudes()(7)), 1 / std::sqrt(2.0), 1e-15);
  const std::vector<PureState> f{PureState::linear(PolAngle(0.0)), PureState::linear(PolAngle(kHalfPi))};
  const PureState hv = PureState::product(f);
  EXPECT_NEAR(std::abs(hv.amplitudes()(1)), 1.0, 1e-15);  // |H>|V>, photon 0 most significant
}

class ApplyMProperties : public ::testing::Test {
protected:
  std::mt19937 rng{314};
  std::uniform_real_distribution<double> angle{0.0, kPi};
};

TEST_F(ApplyMProperties, TraceHermiticityPositivityIdempotence) {
  for (int i = 0; i < 100; ++i) {
    const int photons = 1 + i % 3;
    const DensityMatrix rho = random_state(rng, photons);
    const int k = static_cast<int>(rng() % photons);
    const PolAngle t(angle(rng));
    const DensityMatrix once = apply_M(rho, k, t);
    EXPECT_NEAR(once.trace(), 1.0, 1e-12);
    EXPECT_LT(max_abs(once.matrix() - once.matrix().adjoint()), 1e-12);
    EXPECT_GE(once.min_eigenvalue(), -1e-10);
    EXPECT_LT(max_abs(apply_M(once, k, t).matrix() - once.matrix()), 1e-12);
  }
}

TEST_F(ApplyMProperties, DistinctSubsystemsCommute) {
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_state(rng, 2 + i % 2);
    const PolAngle a(angle(rng)), b(angle(rng));
    const Matrix ab = apply_M(apply_M(rho, 0, a), 1, b).matrix();
    const Matrix ba = apply_M(apply_M(rho, 1, b), 0, a).matrix();
    EXPECT_LT(max_abs(ab - ba), 1e-12);
  }
}

TEST_F(ApplyMProperties, SameSubsystemDoesNotCommute) {
  const DensityMatrix rho = DensityMatrix::pure(PureState::linear(PolAngle(0.3)));
  const PolAngle a = PolAngle::from_degrees(0), b = PolAngle::from_degrees(30);
  const Matrix ab = apply_M(apply_M(rho, 0, a), 0, b).matrix();
  const Matrix ba = apply_M(apply_M(rho, 0, b), 0, a).matrix();
  EXPECT_GT(max_abs(ab - ba), 1e-3);
}

TEST(BellQmTest, HalfCosSquared) {
  for (double d = 10; d <= 80; d += 10) {
    const PolAngle a = PolAngle::from_degrees(d + 7), b = PolAngle::from_degrees(7);
    EXPECT_NEAR(bell_coincidence_qm(a, b), 0.5 * std::pow(std::cos(d * kPi / 180), 2), 1e-12);
  }
}

TEST(MalusTest, Chains) {
  const std::vector<PolAngle> up{PolAngle::from_degrees(45), PolAngle::from_degrees(90)};
  const std::vector<PolAngle> down{PolAngle::from_degrees(90), PolAngle::from_degrees(45)};
  const std::vector<PolAngle> aligned{PolAngle(0.0)};
  EXPECT_EQ(malus_chain(PolAngle(0.0), up), 0.25);
  EXPECT_EQ(malus_chain(PolAngle(0.0), down), 0.0);
  EXPECT_EQ(malus_chain(PolAngle(0.0), aligned), 1.0);
  EXPECT_NEAR(malus_chain(std::nullopt, aligned), 0.5, 1e-15);
}

TEST(DecompositionTest, ReconstructsRandomStates) {
  std::mt19937 rng(8);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_state(rng, 1);
    const LinearDecomposition d = decompose_linear(rho);
    EXPECT_LT(max_abs(Matrix(d.reconstruct()) - rho.matrix()), 1e-12);
    for (const auto& a : d.atoms) EXPECT_GE(a.weight, 0.0);
  }
}

TEST(DecompositionTest, LinearAndCircular) {
  const auto lin = decompose_linear(DensityMatrix::pure(PureState::linear(PolAngle::from_degrees(30))));
  ASSERT_EQ(lin.atoms.size(), 1u);
  EXPECT_EQ(lin.atoms[0].angle, PolAngle::from_degrees(30));
  EXPECT_NEAR(lin.atoms[0].weight, 1.0, 1e-12);
  EXPECT_LT(lin.residual.cwiseAbs().maxCoeff(), 1e-15);

  const auto circ = decompose_linear(DensityMatrix::pure(PureState::circular(true)));
  EXPECT_GT(circ.residual.cwiseAbs().maxCoeff(), 0.4);
  EXPECT_THROW(decompose_linear(DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

}  // namespace
}  // namespace bellfield::quantum
