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

#include "bellfield/dist_fn.hpp"
#include "bellfield/errors.hpp"
#include "bellfield/kernel.hpp"

namespace bellfield {
namespace {

const GradedCoeff kOne = GradedCoeff::constant(1.0);

double integrate_numeric(const FourierSeries& f, int n = 64) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f.evaluate(i * kPi / n, 1.0, 1.0);
  return s * kPi / n;
}

FourierSeries random_series(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierSeries f;
  f.set_cos(0, GradedCoeff::constant(u(rng)));
  for (int k = 1; k <= degree; ++k) {
    f.set_cos(k, GradedCoeff::constant(u(rng)));
    f.set_sin(k, GradedCoeff::constant(u(rng)));
  }
  return f;
}

DistFn random_dist(std::mt19937& rng, double offset) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  DistFn f = DistFn::atom(PolAngle(offset), u(rng));
  f += DistFn::cos_squared(PolAngle(u(rng)), kOne * u(rng));
  f += DistFn::constant(u(rng));
  return f;
}

TEST(DistMulTest, AtomAtomDistinctVanishes) {
  const auto p = dist_mul(DistFn::atom(PolAngle(0.3)), DistFn::atom(PolAngle(1.1)));
  EXPECT_TRUE(p.is_zero());
}

TEST(DistMulTest, AtomAtomSameLocationThrows) {
  EXPECT_THROW(dist_mul(DistFn::atom(PolAngle(0.3)), DistFn::atom(PolAngle(0.3 + kPi))), DeltaCollision);
}

TEST(DistMulTest, AtomSmoothSifts) {
  const PolAngle a = PolAngle::from_degrees(40), b = PolAngle::from_degrees(10);
  const auto p = dist_mul(DistFn::atom(a), DistFn::cos_squared(b, kOne));
  ASSERT_EQ(p.atoms().size(), 1u);
  EXPECT_TRUE(p.smooth().is_zero());
  EXPECT_EQ(p.atoms()[0].location, a);
  EXPECT_NEAR(p.atoms()[0].weight.coefficient(0, 0), std::pow(std::cos(a.radians() - b.radians()), 2), 1e-15);
}

TEST(DistMulTest, SmoothProductMatchesPointwise) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FourierSeries f = random_series(rng, 4), g = random_series(rng, 4);
    const FourierSeries p = f * g;
    EXPECT_FALSE(p.overflowed());
    for (double t : {0.0, 0.37, 1.2, 2.9}) {
      EXPECT_NEAR(p.evaluate(t, 1, 1), f.evaluate(t, 1, 1) * g.evaluate(t, 1, 1), 1e-12);
    }
  }
}

TEST(DistMulTest, CosSquaredProductMatchesQuadrature) {
  const PolAngle x = PolAngle::from_degrees(17), y = PolAngle::from_degrees(71);
  const DistFn p = dist_mul(DistFn::cos_squared(x, kOne), DistFn::cos_squared(y, kOne));
  const double exact = dist_integrate(p).coefficient(0, 0);
  EXPECT_NEAR(exact, integrate_numeric(p.smooth()), 1e-12);
  // Closed form: pi/8 (1 + 2 cos^2(x - y)).
  EXPECT_NEAR(exact, kPi / 8 * (1 + 2 * std::pow(std::cos(x.radians() - y.radians()), 2)), 1e-12);
}

TEST(DistMulTest, OverflowFlagged) {
  std::mt19937 rng(3);
  const FourierSeries p = random_series(rng, 6) * random_series(rng, 6);
  EXPECT_TRUE(p.overflowed());
}

TEST(DistMulTest, CommutativeAndAssociative) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const DistFn f = random_dist(rng, 0.2), g = random_dist(rng, 1.0), h = random_dist(rng, 2.5);
    EXPECT_TRUE(dist_mul(f, g).approx_equal(dist_mul(g, f)));
    EXPECT_TRUE(dist_mul(dist_mul(f, g), h).approx_equal(dist_mul(f, dist_mul(g, h)), 1e-12));
  }
}

TEST(DistIntegrateTest, AtomsAndConstant) {
  const auto w = GradedCoeff::monomial(2.0, 1, 1);
  EXPECT_EQ(dist_integrate(DistFn::atom(PolAngle(0.4), w)), w);
  EXPECT_NEAR(dist_integrate(DistFn::constant(3.0)).coefficient(0, 0), 3.0 * kPi, 1e-15);

  DistFn f = DistFn::atom(PolAngle(0.4));
  f += DistFn::atom(PolAngle(0.4).orthogonal());
  f += DistFn::constant(GradedCoeff::beta());
  const GradedCoeff z = dist_integrate(f);
  EXPECT_EQ(z.coefficient(0, 0), 2.0);
  EXPECT_NEAR(z.coefficient(0, 1), kPi, 1e-15);
  EXPECT_NEAR(regularize(f, 1e-3, 8192, {1.0, 1.0}).integrate(), 2.0 + kPi, 1e-4);
}

TEST(RegularizeTest, AtomHasUnitMass) {
  for (double loc : {0.0, 1e-3, 0.7, kPi - 1e-3}) {
    EXPECT_NEAR(regularize(DistFn::atom(PolAngle(loc)), 0.01).integrate(), 1.0, 1e-12);
  }
}

TEST(RegularizeTest, ZeroStaysZero) {
  const auto r = regularize(DistFn::zero(), 0.01, 512);
  for (double s : r.samples()) EXPECT_EQ(s, 0.0);
}

TEST(RegularizeTest, OrthogonalOverlapBound) {
  const PolAngle a = PolAngle::from_degrees(23);
  const double sigma = 0.01;
  const auto p = regularize(DistFn::atom(a), sigma) * regularize(DistFn::atom(a.orthogonal()), sigma);
  EXPECT_LT(p.integrate(), 1e-12);
  // Two periodic images of the partner kernel sit at distance pi/2.
  const double bound = 2 * std::exp(-std::pow(kHalfPi, 2) / (4 * kMaxSigma * kMaxSigma)) / (2 * kMaxSigma * std::sqrt(kPi));
  const auto wide = regularize(DistFn::atom(a), kMaxSigma) * regularize(DistFn::atom(a.orthogonal()), kMaxSigma);
  EXPECT_LT(wide.integrate(), 1.01 * bound);
}

TEST(RegularizeTest, AtomSmoothWithinSigma) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const DistFn atom = DistFn::atom(PolAngle(u(rng)));
    const DistFn smooth = DistFn::cos_squared(PolAngle(u(rng)), kOne);
    const double sigma = 0.01;
    const double exact = dist_integrate(dist_mul(atom, smooth)).coefficient(0, 0);
    const double reg = (regularize(atom, sigma) * regularize(smooth, sigma)).integrate();
    // max |d/dtheta cos^2| = 1
    EXPECT_LT(std::abs(exact - reg), 10 * sigma);
  }
}

TEST(RegularizeTest, Preconditions) {
  EXPECT_THROW(regularize(DistFn::atom(PolAngle(0.1)), kMaxSigma * 1.01), SigmaTooCoarse);
  EXPECT_THROW(regularize(DistFn::atom(PolAngle(0.1)), 0.01, 128), std::invalid_argument);
  EXPECT_THROW(regularize(DistFn::atom(PolAngle(0.1)), 0.0), std::invalid_argument);
}

TEST(KernelTest, WrappedGaussianIsPeriodic) {
  const WrappedGaussian k(0.1);
  EXPECT_NEAR(k(0.05), k(0.05 + kPi), 1e-12);
  EXPECT_NEAR(k(0.05), k(-0.05), 1e-15);
  EXPECT_EQ(k.width(), 0.1);
}

}  // namespace
}  // namespace bellfield
