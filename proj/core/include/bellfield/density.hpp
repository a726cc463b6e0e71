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

#ifndef BELLFIELD_DENSITY_HPP
#define BELLFIELD_DENSITY_HPP

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bellfield/pol_angle.hpp"

namespace bellfield::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// n-photon polarization state over the |H>/|V> product basis. Photon 0 is
/// the most significant tensor factor.
class PureState {
public:
  /// Throws NotAState unless the vector has unit norm (1e-12) and length 2^n.
  explicit PureState(Vector amplitudes);

  /// cos(theta)|H> + sin(theta)|V>.
  static PureState linear(PolAngle theta);
  /// (|H> + i|V>)/sqrt(2) for clockwise, conjugate phase otherwise.
  static PureState circular(bool clockwise);
  /// (|H...H> + |V...V>)/sqrt(2) on n photons.
  static PureState ghz(int photons);
  static PureState product(std::span<const PureState> factors);

  int photons() const { return photons_; }
  const Vector& amplitudes() const { return amplitudes_; }

private:
  Vector amplitudes_;
  int photons_ = 0;
};

class DensityMatrix {
public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenTolerance = 1e-10;

  /// Throws NotAState unless rho is 2^n square, Hermitian, unit trace and
  /// positive semidefinite within the class tolerances.
  explicit DensityMatrix(Matrix rho);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int photons);

  int photons() const { return photons_; }
  const Matrix& matrix() const { return rho_; }
  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;

private:
  Matrix rho_;
  int photons_ = 0;
};

/// |theta><theta| on one photon.
Matrix2 linear_projector(PolAngle theta);

/// op acting on photon `subsystem` of an n-photon space.
Matrix embed(const Matrix2& op, int subsystem, int photons);

/// Polarizer dephasing on an arbitrary operator (not necessarily a state):
///   X -> P X P + P' X P'  with P, P' projecting on theta0, theta0 + pi/2.
Matrix dephase(const Matrix& op, int subsystem, PolAngle theta0);

/// Traditional polarizer superoperator on one photon of rho.
DensityMatrix apply_M(const DensityMatrix& rho, int subsystem, PolAngle theta0);

/// Unnormalized state after every listed photon passes its polarizer.
Matrix project_pass(const Matrix& op, std::span<const int> subsystems,
                    std::span<const PolAngle> settings);

/// Coincidence rate for the (|HH> + |VV>)/sqrt(2) pair with settings a, b.
double bell_coincidence_qm(PolAngle theta_a, PolAngle theta_b);

/// Transmission of one beam through polarizers in sequence. An empty
/// `initial` means unpolarized light.
double malus_chain(std::optional<PolAngle> initial, std::span<const PolAngle> settings);

struct LinearAtom {
  PolAngle angle;
  double weight = 0.0;
};

/// rho = residual + sum_i weight_i |angle_i><angle_i|.
struct LinearDecomposition {
  Matrix2 residual = Matrix2::Zero();
  std::vector<LinearAtom> atoms;

  Matrix2 reconstruct() const;
};

/// Real part of rho eigen-decomposed into linear polarizations, imaginary
/// (circular) part left as the residual. Single photon only.
LinearDecomposition decompose_linear(const DensityMatrix& rho);

using DecompositionStrategy = std::function<LinearDecomposition(const DensityMatrix&)>;

}  // namespace bellfield::quantum

#endif  // BELLFIELD_DENSITY_HPP
