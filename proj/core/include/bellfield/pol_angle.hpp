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

#ifndef BELLFIELD_POL_ANGLE_HPP
#define BELLFIELD_POL_ANGLE_HPP

#include <numbers>

namespace bellfield {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Tolerance under which two polarization angles are the same angle.
inline constexpr double kAngleTolerance = 1e-12;

/// Linear polarization angle, stored in radians and reduced to [0, pi).
class PolAngle {
public:
  constexpr PolAngle() = default;
  explicit PolAngle(double radians);

  static PolAngle from_degrees(double degrees);

  double radians() const { return value_; }
  double degrees() const { return value_ * 180.0 / kPi; }

  /// The orthogonal polarization, this + pi/2.
  /// cos and sin of the stored angle, exact at 0 and pi/2.
  double cos() const;
  double sin() const;

  PolAngle orthogonal() const { return PolAngle(value_ + kHalfPi); }

  PolAngle rotated(double radians) const { return PolAngle(value_ + radians); }

  /// Shortest distance on the mod-pi circle, in [0, pi/2].
  double distance(PolAngle other) const;

  friend bool operator==(PolAngle lhs, PolAngle rhs) {
    return lhs.distance(rhs) < kAngleTolerance;
  }

private:
  double value_ = 0.0;
};

/// Reduces an arbitrary real into [0, pi).
double reduce_mod_pi(double radians);

}  // namespace bellfield

#endif  // BELLFIELD_POL_ANGLE_HPP
