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

#ifndef BELLFIELD_DIST_FN_HPP
#define BELLFIELD_DIST_FN_HPP

#include <span>
#include <string>
#include <vector>

#include "bellfield/graded_coeff.hpp"
#include "bellfield/kernel.hpp"
#include "bellfield/pol_angle.hpp"

namespace bellfield {

/// Truncated even-harmonic series
///   c_0 + sum_{k=1..K} (c_k cos 2k theta + s_k sin 2k theta)
/// with graded coefficients. Period pi, matching PolAngle.
class FourierSeries {
public:
  static constexpr int kDefaultOrder = 8;

  explicit FourierSeries(int order = kDefaultOrder);

  int order() const { return order_; }
  const GradedCoeff& cos_coeff(int k) const { return cos_[k]; }
  const GradedCoeff& sin_coeff(int k) const { return sin_[k]; }
  void set_cos(int k, GradedCoeff c);
  void set_sin(int k, GradedCoeff c);

  bool is_zero() const;
  /// Set when a product produced harmonics above order() that were dropped.
  bool overflowed() const { return overflowed_; }

  GradedCoeff at(PolAngle theta) const;
  double evaluate(double theta, double alpha, double beta) const;

  FourierSeries& operator+=(const FourierSeries& rhs);
  FourierSeries& operator*=(const GradedCoeff& s);
  friend FourierSeries operator*(const FourierSeries& lhs, const FourierSeries& rhs);

  bool approx_equal(const FourierSeries& other, double rel_tol) const;
  friend bool operator==(const FourierSeries&, const FourierSeries&) = default;

private:
  int order_;
  std::vector<GradedCoeff> cos_;
  std::vector<GradedCoeff> sin_;
  bool overflowed_ = false;
};

struct Atom {
  PolAngle location;
  GradedCoeff weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Distribution over the polarization angle: weighted delta atoms plus a
/// smooth Fourier part. Atom locations are pairwise distinct.
class DistFn {
public:
  explicit DistFn(int fourier_order = FourierSeries::kDefaultOrder);

  static DistFn zero() { return DistFn(); }
  static DistFn constant(GradedCoeff c);
  static DistFn constant(double c) { return constant(GradedCoeff::constant(c)); }
  static DistFn atom(PolAngle location, GradedCoeff weight);
  static DistFn atom(PolAngle location, double weight = 1.0) {
    return atom(location, GradedCoeff::constant(weight));
  }
  /// scale * cos^2(theta - center).
  static DistFn cos_squared(PolAngle center, GradedCoeff scale);
  /// scale * sin^2(theta - center).
  static DistFn sin_squared(PolAngle center, GradedCoeff scale);

  std::span<const Atom> atoms() const { return atoms_; }
  const FourierSeries& smooth() const { return smooth_; }
  FourierSeries& smooth() { return smooth_; }

  /// Adds weight at location, merging with an existing atom there.
  void add_atom(PolAngle location, GradedCoeff weight);

  bool is_zero() const { return atoms_.empty() && smooth_.is_zero(); }
  bool overflowed() const { return smooth_.overflowed(); }
  /// True when the only content is the DC term.
  bool is_constant() const;

  DistFn& operator+=(const DistFn& rhs);
  DistFn& operator*=(const GradedCoeff& s);
  friend DistFn operator+(DistFn lhs, const DistFn& rhs) { return lhs += rhs; }
  friend DistFn operator*(DistFn lhs, const GradedCoeff& s) { return lhs *= s; }
  friend DistFn operator*(const GradedCoeff& s, DistFn rhs) { return rhs *= s; }

  /// Structural comparison with per-coefficient relative tolerance; atoms
  /// are matched by location regardless of order.
  bool approx_equal(const DistFn& other, double rel_tol = 1e-13) const;

  std::string to_string() const;

private:
  std::vector<Atom> atoms_;
  FourierSeries smooth_;
};

/// Product of two distributions.
///
/// Atom x atom at distinct locations vanishes; at a shared location it
/// throws DeltaCollision. Atom x smooth sifts the smooth factor at the atom.
/// Smooth x smooth convolves harmonics and flags truncation overflow.
DistFn dist_mul(const DistFn& f, const DistFn& g);

/// Integral over [0, pi): atom weights plus pi times the DC term.
GradedCoeff dist_integrate(const DistFn& f);

/// Values substituted for the formal parameters when leaving graded mode.
struct Substitution {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Samples on the uniform grid theta_i = i*pi/N, i = 0..N-1 of [0, pi).
/// The grid is periodic, so the trapezoid rule is (pi/N) * sum(samples).
class RegularizedDistFn {
public:
  RegularizedDistFn(std::vector<double> samples, double sigma);

  static RegularizedDistFn zeros(int n, double sigma);

  int size() const { return static_cast<int>(samples_.size()); }
  double sigma() const { return sigma_; }
  double step() const { return kPi / size(); }
  double grid_point(int i) const { return i * step(); }
  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }

  double integrate() const;

  RegularizedDistFn& operator*=(const RegularizedDistFn& rhs);
  RegularizedDistFn& operator+=(const RegularizedDistFn& rhs);
  friend RegularizedDistFn operator*(RegularizedDistFn lhs, const RegularizedDistFn& rhs) {
    return lhs *= rhs;
  }
  friend RegularizedDistFn operator+(RegularizedDistFn lhs, const RegularizedDistFn& rhs) {
    return lhs += rhs;
  }

private:
  std::vector<double> samples_;
  double sigma_;
};

inline constexpr int kDefaultGridSize = 8192;
inline constexpr int kMinGridSize = 256;
/// Widest kernel that still keeps atoms pi/2 apart well separated.
inline constexpr double kMaxSigma = kPi / 16.0;

/// Unit-mass kernel samples centred at location, normalized so the discrete
/// trapezoid sum is exactly one.
std::vector<double> sample_atom(const Kernel& kernel, PolAngle location, int n);

/// Replaces each atom by a unit-mass kernel copy and samples the smooth part
/// on the grid. Throws SigmaTooCoarse when sigma > pi/16 and
/// std::invalid_argument for sigma <= 0 or n < 256.
RegularizedDistFn regularize(const DistFn& f, double sigma, int n = kDefaultGridSize,
                             Substitution subs = {}, const KernelPtr& kernel = nullptr);

}  // namespace bellfield

#endif  // BELLFIELD_DIST_FN_HPP
