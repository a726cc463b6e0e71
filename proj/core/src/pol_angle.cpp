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

#include "bellfield/pol_angle.hpp"

#include <algorithm>
#include <cmath>

namespace bellfield {

double reduce_mod_pi(double radians) {
  double r = std::fmod(radians, kPi);
  if (r < 0.0) r += kPi;
  // fmod of a tiny negative value can round up to exactly pi.
  if (r >= kPi) r = 0.0;
  return r;
}

PolAngle::PolAngle(double radians) : value_(reduce_mod_pi(radians)) {}

PolAngle PolAngle::from_degrees(double degrees) {
  return PolAngle(degrees * kPi / 180.0);
}

double PolAngle::distance(PolAngle other) const {
  const double d = std::fabs(value_ - other.value_);
  return std::min(d, kPi - d);
}

double PolAngle::cos() const {
  if (distance(PolAngle(0.0)) < kAngleTolerance) return value_ < kHalfPi ? 1.0 : -1.0;
  if (distance(PolAngle(kHalfPi)) < kAngleTolerance) return 0.0;
  return std::cos(value_);
}

double PolAngle::sin() const {
  if (distance(PolAngle(0.0)) < kAngleTolerance) return 0.0;
  if (distance(PolAngle(kHalfPi)) < kAngleTolerance) return 1.0;
  return std::sin(value_);
}

}  // namespace bellfield
