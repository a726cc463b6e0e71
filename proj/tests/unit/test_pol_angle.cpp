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

#include "bellfield/pol_angle.hpp"

namespace bellfield {
namespace {

TEST(PolAngleTest, ReducesModPi) {
  EXPECT_NEAR(PolAngle(kPi + 0.25).radians(), 0.25, 1e-15);
  EXPECT_NEAR(PolAngle(-0.25).radians(), kPi - 0.25, 1e-15);
  EXPECT_NEAR(PolAngle::from_degrees(270).degrees(), 90.0, 1e-12);
  EXPECT_GE(PolAngle(-1e-18).radians(), 0.0);
  EXPECT_LT(PolAngle(-1e-18).radians(), kPi);
}

TEST(PolAngleTest, OrthogonalAndDistance) {
  const PolAngle a = PolAngle::from_degrees(30);
  EXPECT_NEAR(a.orthogonal().degrees(), 120.0, 1e-12);
  EXPECT_EQ(a.orthogonal().orthogonal(), a);
  EXPECT_NEAR(PolAngle::from_degrees(1).distance(PolAngle::from_degrees(179)), 2.0 * kPi / 180, 1e-12);
}

TEST(PolAngleTest, EqualityToleratesWrap) {
  EXPECT_EQ(PolAngle(1e-14), PolAngle(kPi - 1e-14));
  EXPECT_FALSE(PolAngle(0.0) == PolAngle(1e-9));
}

TEST(PolAngleTest, CosSinExactAtQuarterTurns) {
  EXPECT_EQ(PolAngle::from_degrees(90).cos(), 0.0);
  EXPECT_EQ(PolAngle::from_degrees(90).sin(), 1.0);
  EXPECT_EQ(PolAngle(0.0).cos(), 1.0);
  EXPECT_EQ(PolAngle(0.0).sin(), 0.0);
  const PolAngle a = PolAngle::from_degrees(37);
  EXPECT_DOUBLE_EQ(a.cos(), std::cos(a.radians()));
  EXPECT_DOUBLE_EQ(a.sin(), std::sin(a.radians()));
}

}  // namespace
}  // namespace bellfield
