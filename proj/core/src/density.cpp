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

#include "bellfield/density.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bellfield/errors.hpp"

namespace bellfield::quantum {

namespace {

int photons_for_dimension(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n == 0) {
    throw NotAState("dimension " + std::to_string(dim) + " is not 2^n");
  }
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  photons_ = photons_for_dimension(amplitudes_.size());
  if (std::fabs(amplitudes_.norm() - 1.0) > 1e-12) throw NotAState("state vector is not normalized");
}

PureState PureState::linear(PolAngle theta) {
  Vector v(2);
  v << theta.cos(), theta.sin();
  return PureState(std::move(v));
}

PureState PureState::circular(bool clockwise) {
  Vector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  v << r, Complex(0.0, clockwise ? r : -r);
  return PureState(std::move(v));
}

PureState PureState::ghz(int photons) {
  if (photons < 1) throw std::invalid_argument("ghz needs at least one photon");
  Vector v = Vector::Zero(Eigen::Index{1} << photons);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(v));
}

PureState PureState::product(std::span<const PureState> factors) {
  if (factors.empty()) throw std::invalid_argument("empty product state");
  Vector v = factors.front().amplitudes();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const Vector& f = factors[i].amplitudes();
    Vector next(v.size() * f.size());
    for (Eigen::Index a = 0; a < v.size(); ++a) {
      for (Eigen::Index b = 0; b < f.size(); ++b) next(a * f.size() + b) = v(a) * f(b);
    }
    v = std::move(next);
  }
  return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw NotAState("density matrix is not square");
  photons_ = photons_for_dimension(rho_.rows());
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw NotAState("density matrix is not Hermitian");
  }
  if (std::fabs(rho_.trace().real() - 1.0) > kTraceTolerance) throw NotAState("density matrix trace is not 1");
  if (min_eigenvalue() < -kEigenTolerance) throw NotAState("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int photons) {
  const Eigen::Index dim = Eigen::Index{1} << photons;
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Superoperators

Matrix2 linear_projector(PolAngle theta) {
  const double c = theta.cos();
  const double s = theta.sin();
  Matrix2 p;
  p << c * c, c * s, c * s, s * s;
  return p;
}

Matrix embed(const Matrix2& op, int subsystem, int photons) {
  if (subsystem < 0 || subsystem >= photons) throw std::out_of_range("subsystem index out of range");
  const Eigen::Index left = Eigen::Index{1} << subsystem;
  const Eigen::Index right = Eigen::Index{1} << (photons - subsystem - 1);
  const Eigen::Index dim = left * 2 * right;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < right; ++r) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          out((l * 2 + i) * right + r, (l * 2 + j) * right + r) = op(i, j);
        }
      }
    }
  }
  return out;
}

Matrix dephase(const Matrix& op, int subsystem, PolAngle theta0) {
  const int n = photons_for_dimension(op.rows());
  const Matrix pass = embed(linear_projector(theta0), subsystem, n);
  const Matrix block = embed(linear_projector(theta0.orthogonal()), subsystem, n);
  return pass * op * pass + block * op * block;
}

DensityMatrix apply_M(const DensityMatrix& rho, int subsystem, PolAngle theta0) {
  return DensityMatrix(dephase(rho.matrix(), subsystem, theta0));
}

Matrix project_pass(const Matrix& op, std::span<const int> subsystems,
                    std::span<const PolAngle> settings) {
  if (subsystems.size() != settings.size()) throw std::invalid_argument("one setting per subsystem");
  const int n = photons_for_dimension(op.rows());
  Matrix out = op;
  for (std::size_t i = 0; i < subsystems.size(); ++i) {
    const Matrix p = embed(linear_projector(settings[i]), subsystems[i], n);
    out = p * out * p;
  }
  return out;
}

double bell_coincidence_qm(PolAngle theta_a, PolAngle theta_b) {
  DensityMatrix rho = DensityMatrix::pure(PureState::ghz(2));
  rho = apply_M(rho, 0, theta_a);
  rho = apply_M(rho, 1, theta_b);
  const int arms[] = {0, 1};
  const PolAngle settings[] = {theta_a, theta_b};
  return project_pass(rho.matrix(), arms, settings).trace().real();
}

double malus_chain(std::optional<PolAngle> initial, std::span<const PolAngle> settings) {
  if (settings.empty()) throw std::invalid_argument("malus_chain needs at least one polarizer");
  Matrix rho = initial ? DensityMatrix::pure(PureState::linear(*initial)).matrix()
                       : DensityMatrix::maximally_mixed(1).matrix();
  for (PolAngle s : settings) {
    rho = dephase(rho, 0, s);
    const Matrix p = linear_projector(s);
    rho = p * rho * p;
  }
  return rho.trace().real();
}

// ---------------------------------------------------------------------------
// Linear decomposition

Matrix2 LinearDecomposition::reconstruct() const {
  Matrix2 out = residual;
  for (const auto& a : atoms) out += a.weight * linear_projector(a.angle);
  return out;
}

LinearDecomposition decompose_linear(const DensityMatrix& rho) {
  if (rho.photons() != 1) throw std::invalid_argument("decompose_linear is single-photon only");
  const Matrix2 full = rho.matrix();
  const Eigen::Matrix2d real = full.real();
  LinearDecomposition out;
  out.residual = full - real.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(real);
  for (int k = 0; k < 2; ++k) {
    const double w = solver.eigenvalues()(k);
    if (w <= 1e-15) continue;
    const Eigen::Vector2d v = solver.eigenvectors().col(k);
    out.atoms.push_back({PolAngle(std::atan2(v(1), v(0))), w});
  }
  return out;
}

}  // namespace bellfield::quantum
