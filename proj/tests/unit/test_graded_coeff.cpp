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

#include "bellfield/errors.hpp"
#include "bellfield/graded_coeff.hpp"
#include "bellfield/pol_angle.hpp"

namespace bellfield {
namespace {

GradedCoeff random_coeff(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> e(0, 3);
  GradedCoeff c;
  for (int i = 0; i < 4; ++i) c += GradedCoeff::monomial(u(rng), e(rng), e(rng));
  return c;
}

TEST(GradedCoeffTest, CanonicalTerms) {
  GradedCoeff c = GradedCoeff::alpha() + GradedCoeff::beta() + GradedCoeff::constant(2.0);
  ASSERT_EQ(c.terms().size(), 3u);
  EXPECT_EQ(c.terms()[0].a, 0);
  EXPECT_EQ(c.terms()[0].b, 0);
  EXPECT_EQ(c.terms()[1].b, 1);
  EXPECT_EQ(c.terms()[2].a, 1);
  c -= GradedCoeff::beta();
  EXPECT_EQ(c.terms().size(), 2u);
  EXPECT_EQ(c.coefficient(0, 1), 0.0);
}

TEST(GradedCoeffTest, RingAxioms) {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const GradedCoeff x = random_coeff(rng), y = random_coeff(rng), z = random_coeff(rng);
    EXPECT_TRUE((x * y).approx_equal(y * x));
    EXPECT_TRUE(((x * y) * z).approx_equal(x * (y * z), 1e-12));
    EXPECT_TRUE((x * (y + z)).approx_equal(x * y + x * z, 1e-12));
    EXPECT_TRUE(((x + y) + z).approx_equal(x + (y + z)));
    EXPECT_TRUE((x - x).is_zero());
    EXPECT_EQ(x * GradedCoeff::constant(1.0), x);
  }
}

TEST(GradedCoeffTest, TruncatesAboveMaxDegree) {
  const GradedCoeff x = GradedCoeff::monomial(1.0, 2, 3, 6);
  const GradedCoeff y = GradedCoeff::monomial(1.0, 1, 1);
  EXPECT_EQ((x * y).terms().size(), 0u);
  EXPECT_EQ((x * y).max_total_degree(), 6);
  EXPECT_EQ((GradedCoeff::monomial(1.0, 1, 3, 6) * GradedCoeff::beta()).coefficient(1, 4), 1.0);
}

TEST(GradedCoeffTest, EvaluateSubstitutes) {
  const GradedCoeff c = GradedCoeff::monomial(3.0, 2, 1) + GradedCoeff::constant(1.0);
  EXPECT_DOUBLE_EQ(c.evaluate(2.0, 0.5), 1.0 + 3.0 * 4.0 * 0.5);
}

TEST(GradedCoeffTest, RatioLimitLeadingTerms) {
  const GradedCoeff den = GradedCoeff::monomial(16, 2, 3) + GradedCoeff::monomial(4 * kPi, 2, 4);
  const GradedCoeff num = GradedCoeff::monomial(6, 2, 3) + GradedCoeff::monomial(1, 2, 5);
  EXPECT_DOUBLE_EQ(coeff_ratio_limit(num, den), 6.0 / 16.0);
  EXPECT_EQ(coeff_ratio_limit(GradedCoeff::monomial(1, 2, 4), den), 0.0);
  EXPECT_EQ(coeff_ratio_limit(GradedCoeff(), den), 0.0);
}

TEST(GradedCoeffTest, RatioLimitCosineExample) {
  const double c = 0.3;
  const GradedCoeff den = GradedCoeff::monomial(16, 2, 3) + GradedCoeff::monomial(4 * kPi, 2, 4);
  const GradedCoeff num = GradedCoeff::monomial(8 * c, 2, 3);
  EXPECT_DOUBLE_EQ(coeff_ratio_limit(num, den), c / 2);
  EXPECT_EQ(coeff_ratio_limit(GradedCoeff::monomial(1, 2, 3), GradedCoeff::monomial(1, 2, 3)), 1.0);
  for (double beta : {1e-3, 1e-4, 1e-5}) {
    const double f1 = coeff_ratio_at(num, den, 1.0, beta);
    const double f2 = coeff_ratio_at(num, den, 1.0, beta / 2);
    EXPECT_NEAR(2 * f2 - f1, c / 2, 10 * beta * beta);
  }
}

TEST(GradedCoeffTest, RatioLimitMatchesRichardsonOracle) {
  const GradedCoeff den = GradedCoeff::monomial(16, 2, 3) + GradedCoeff::monomial(4 * kPi, 2, 4);
  const GradedCoeff num = GradedCoeff::monomial(2, 2, 3) + GradedCoeff::monomial(-5, 2, 4);
  const double limit = coeff_ratio_limit(num, den);
  // The finite-beta ratio is linear in beta near zero; one Richardson step
  // per halving removes that term.
  double previous_error = 1.0;
  for (double beta : {1e-3, 1e-4, 1e-5}) {
    const double f1 = coeff_ratio_at(num, den, 1.0, beta);
    const double f2 = coeff_ratio_at(num, den, 1.0, beta / 2);
    const double extrapolated = 2.0 * f2 - f1;
    const double error = std::abs(extrapolated - limit);
    EXPECT_LT(error, 1e-6);
    EXPECT_LT(error, previous_error);
    previous_error = error;
  }
}

TEST(GradedCoeffTest, RatioLimitErrors) {
  const GradedCoeff den = GradedCoeff::monomial(1, 2, 3);
  EXPECT_THROW(coeff_ratio_limit(den, GradedCoeff()), ZeroPartition);
  EXPECT_THROW(coeff_ratio_limit(GradedCoeff::monomial(1, 1, 3), den), MismatchedAlphaOrder);
  EXPECT_THROW(coeff_ratio_limit(GradedCoeff::monomial(1, 3, 3), den), MismatchedAlphaOrder);
  EXPECT_THROW(coeff_ratio_limit(GradedCoeff::monomial(1, 2, 2), den), DivergentLimit);
}

TEST(GradedCoeffTest, ApproxEqualNeedsSameSupport) {
  const GradedCoeff x = GradedCoeff::monomial(1.0, 1, 1);
  EXPECT_TRUE(x.approx_equal(GradedCoeff::monomial(1.0 + 1e-15, 1, 1)));
  EXPECT_FALSE(x.approx_equal(x + GradedCoeff::monomial(1e-300, 0, 0)));
  EXPECT_FALSE(x.approx_equal(GradedCoeff::monomial(1.001, 1, 1)));
}

}  // namespace
}  // namespace bellfield
