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

#include "bellfield/dist_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bellfield/errors.hpp"

namespace bellfield {

// ---------------------------------------------------------------------------
// FourierSeries

FourierSeries::FourierSeries(int order) : order_(order), cos_(order + 1), sin_(order + 1) {
  if (order < 0) throw std::invalid_argument("negative Fourier order");
}

void FourierSeries::set_cos(int k, GradedCoeff c) { cos_.at(k) = std::move(c); }

void FourierSeries::set_sin(int k, GradedCoeff c) {
  if (k == 0) throw std::invalid_argument("sin harmonic 0 is identically zero");
  sin_.at(k) = std::move(c);
}

bool FourierSeries::is_zero() const {
  return std::all_of(cos_.begin(), cos_.end(), [](const auto& c) { return c.is_zero(); }) &&
         std::all_of(sin_.begin(), sin_.end(), [](const auto& c) { return c.is_zero(); });
}

GradedCoeff FourierSeries::at(PolAngle theta) const {
  GradedCoeff out = cos_[0];
  for (int k = 1; k <= order_; ++k) {
    const double x = 2.0 * k * theta.radians();
    if (!cos_[k].is_zero()) out += cos_[k] * std::cos(x);
    if (!sin_[k].is_zero()) out += sin_[k] * std::sin(x);
  }
  return out;
}

double FourierSeries::evaluate(double theta, double alpha, double beta) const {
  double out = cos_[0].evaluate(alpha, beta);
  for (int k = 1; k <= order_; ++k) {
    const double x = 2.0 * k * theta;
    if (!cos_[k].is_zero()) out += cos_[k].evaluate(alpha, beta) * std::cos(x);
    if (!sin_[k].is_zero()) out += sin_[k].evaluate(alpha, beta) * std::sin(x);
  }
  return out;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& rhs) {
  if (rhs.order_ > order_) {
    cos_.resize(rhs.order_ + 1);
    sin_.resize(rhs.order_ + 1);
    order_ = rhs.order_;
  }
  for (int k = 0; k <= rhs.order_; ++k) {
    if (!rhs.cos_[k].is_zero()) cos_[k] += rhs.cos_[k];
    if (!rhs.sin_[k].is_zero()) sin_[k] += rhs.sin_[k];
  }
  overflowed_ = overflowed_ || rhs.overflowed_;
  return *this;
}

FourierSeries& FourierSeries::operator*=(const GradedCoeff& s) {
  for (auto& c : cos_) {
    if (!c.is_zero()) c = c * s;
  }
  for (auto& c : sin_) {
    if (!c.is_zero()) c = c * s;
  }
  return *this;
}

FourierSeries operator*(const FourierSeries& lhs, const FourierSeries& rhs) {
  const int order = std::min(lhs.order_, rhs.order_);
  const int full = lhs.order_ + rhs.order_;
  std::vector<GradedCoeff> cs(full + 1);
  std::vector<GradedCoeff> ss(full + 1);

  auto add_cos = [&](int k, const GradedCoeff& v) { cs[k] += v; };
  // sin(k x) is odd in k.
  auto add_sin = [&](int k, const GradedCoeff& v) {
    if (k > 0) ss[k] += v;
    else if (k < 0) ss[-k] -= v;
  };

  for (int n = 0; n <= lhs.order_; ++n) {
    const GradedCoeff& lc = lhs.cos_[n];
    const GradedCoeff& ls = lhs.sin_[n];
    if (lc.is_zero() && ls.is_zero()) continue;
    for (int m = 0; m <= rhs.order_; ++m) {
      const GradedCoeff& rc = rhs.cos_[m];
      const GradedCoeff& rs = rhs.sin_[m];
      if (!lc.is_zero() && !rc.is_zero()) {
        const GradedCoeff half = lc * rc * 0.5;
        add_cos(n + m, half);
        add_cos(std::abs(n - m), half);
      }
      if (!ls.is_zero() && !rs.is_zero()) {
        const GradedCoeff half = ls * rs * 0.5;
        add_cos(std::abs(n - m), half);
        add_cos(n + m, -half);
      }
      if (!lc.is_zero() && !rs.is_zero()) {
        // cos(n) sin(m) = (sin(n + m) + sin(m - n)) / 2
        const GradedCoeff half = lc * rs * 0.5;
        add_sin(n + m, half);
        add_sin(m - n, half);
      }
      if (!ls.is_zero() && !rc.is_zero()) {
        const GradedCoeff half = ls * rc * 0.5;
        add_sin(n + m, half);
        add_sin(n - m, half);
      }
    }
  }

  FourierSeries out(order);
  out.overflowed_ = lhs.overflowed_ || rhs.overflowed_;
  for (int k = 0; k <= full; ++k) {
    if (k <= order) {
      out.cos_[k] = std::move(cs[k]);
      if (k > 0) out.sin_[k] = std::move(ss[k]);
    } else if (!cs[k].is_zero() || !ss[k].is_zero()) {
      out.overflowed_ = true;
    }
  }
  return out;
}

bool FourierSeries::approx_equal(const FourierSeries& other, double rel_tol) const {
  const int n = std::max(order_, other.order_);
  const GradedCoeff zero;
  for (int k = 0; k <= n; ++k) {
    const auto& lc = k <= order_ ? cos_[k] : zero;
    const auto& rc = k <= other.order_ ? other.cos_[k] : zero;
    const auto& ls = k <= order_ ? sin_[k] : zero;
    const auto& rs = k <= other.order_ ? other.sin_[k] : zero;
    if (!lc.approx_equal(rc, rel_tol) || !ls.approx_equal(rs, rel_tol)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// DistFn

DistFn::DistFn(int fourier_order) : smooth_(fourier_order) {}

DistFn DistFn::constant(GradedCoeff c) {
  DistFn f;
  f.smooth_.set_cos(0, std::move(c));
  return f;
}

DistFn DistFn::atom(PolAngle location, GradedCoeff weight) {
  DistFn f;
  f.add_atom(location, std::move(weight));
  return f;
}

DistFn DistFn::cos_squared(PolAngle center, GradedCoeff scale) {
  // cos^2(t - x) = 1/2 + cos(2x) cos(2t) / 2 + sin(2x) sin(2t) / 2
  DistFn f;
  const double x = 2.0 * center.radians();
  f.smooth_.set_cos(0, scale * 0.5);
  f.smooth_.set_cos(1, scale * (0.5 * std::cos(x)));
  f.smooth_.set_sin(1, scale * (0.5 * std::sin(x)));
  return f;
}

DistFn DistFn::sin_squared(PolAngle center, GradedCoeff scale) {
  DistFn f;
  const double x = 2.0 * center.radians();
  f.smooth_.set_cos(0, scale * 0.5);
  f.smooth_.set_cos(1, scale * (-0.5 * std::cos(x)));
  f.smooth_.set_sin(1, scale * (-0.5 * std::sin(x)));
  return f;
}

void DistFn::add_atom(PolAngle location, GradedCoeff weight) {
  if (weight.is_zero()) return;
  auto it = std::find_if(atoms_.begin(), atoms_.end(),
                         [&](const Atom& a) { return a.location == location; });
  if (it == atoms_.end()) {
    atoms_.push_back(Atom{location, std::move(weight)});
    return;
  }
  it->weight += weight;
  if (it->weight.is_zero()) atoms_.erase(it);
}

bool DistFn::is_constant() const {
  if (!atoms_.empty()) return false;
  for (int k = 1; k <= smooth_.order(); ++k) {
    if (!smooth_.cos_coeff(k).is_zero() || !smooth_.sin_coeff(k).is_zero()) return false;
  }
  return true;
}

DistFn& DistFn::operator+=(const DistFn& rhs) {
  for (const Atom& a : rhs.atoms_) add_atom(a.location, a.weight);
  smooth_ += rhs.smooth_;
  return *this;
}

DistFn& DistFn::operator*=(const GradedCoeff& s) {
  if (s.is_zero()) {
    *this = DistFn(smooth_.order());
    return *this;
  }
  for (Atom& a : atoms_) a.weight = a.weight * s;
  std::erase_if(atoms_, [](const Atom& a) { return a.weight.is_zero(); });
  smooth_ *= s;
  return *this;
}

bool DistFn::approx_equal(const DistFn& other, double rel_tol) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (const Atom& a : atoms_) {
    auto it = std::find_if(other.atoms_.begin(), other.atoms_.end(),
                           [&](const Atom& b) { return b.location == a.location; });
    if (it == other.atoms_.end() || !a.weight.approx_equal(it->weight, rel_tol)) return false;
  }
  return smooth_.approx_equal(other.smooth_, rel_tol);
}

std::string DistFn::to_string() const {
  std::ostringstream os;
  for (const Atom& a : atoms_) os << "delta(" << a.location.radians() << ")*[" << a.weight << "] + ";
  os << "[" << smooth_.cos_coeff(0) << "]";
  for (int k = 1; k <= smooth_.order(); ++k) {
    if (!smooth_.cos_coeff(k).is_zero()) os << " + [" << smooth_.cos_coeff(k) << "]cos" << 2 * k;
    if (!smooth_.sin_coeff(k).is_zero()) os << " + [" << smooth_.sin_coeff(k) << "]sin" << 2 * k;
  }
  if (overflowed()) os << " (truncated)";
  return os.str();
}

DistFn dist_mul(const DistFn& f, const DistFn& g) {
  DistFn out(std::min(f.smooth().order(), g.smooth().order()));
  for (const Atom& a : f.atoms()) {
    for (const Atom& b : g.atoms()) {
      if (a.location == b.location) {
        throw DeltaCollision("delta atoms collide at theta = " +
                             std::to_string(a.location.radians()) +
                             "; use regularized mode");
      }
    }
  }
  if (!g.smooth().is_zero()) {
    for (const Atom& a : f.atoms()) out.add_atom(a.location, a.weight * g.smooth().at(a.location));
  }
  if (!f.smooth().is_zero()) {
    for (const Atom& b : g.atoms()) out.add_atom(b.location, b.weight * f.smooth().at(b.location));
  }
  if (!f.smooth().is_zero() && !g.smooth().is_zero()) out.smooth() = f.smooth() * g.smooth();
  return out;
}

GradedCoeff dist_integrate(const DistFn& f) {
  GradedCoeff total = f.smooth().cos_coeff(0) * kPi;
  for (const Atom& a : f.atoms()) total += a.weight;
  return total;
}

// ---------------------------------------------------------------------------
// RegularizedDistFn

RegularizedDistFn::RegularizedDistFn(std::vector<double> samples, double sigma)
    : samples_(std::move(samples)), sigma_(sigma) {
  if (samples_.empty()) throw std::invalid_argument("empty regularized grid");
}

RegularizedDistFn RegularizedDistFn::zeros(int n, double sigma) {
  return RegularizedDistFn(std::vector<double>(static_cast<std::size_t>(n), 0.0), sigma);
}

double RegularizedDistFn::integrate() const {
  return step() * std::accumulate(samples_.begin(), samples_.end(), 0.0);
}

RegularizedDistFn& RegularizedDistFn::operator*=(const RegularizedDistFn& rhs) {
  if (rhs.size() != size()) throw std::invalid_argument("grid size mismatch");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] *= rhs.samples_[i];
  return *this;
}

RegularizedDistFn& RegularizedDistFn::operator+=(const RegularizedDistFn& rhs) {
  if (rhs.size() != size()) throw std::invalid_argument("grid size mismatch");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += rhs.samples_[i];
  return *this;
}

std::vector<double> sample_atom(const Kernel& kernel, PolAngle location, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double dx = kPi / n;
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    out[i] = kernel(i * dx - location.radians());
    mass += out[i];
  }
  mass *= dx;
  for (double& v : out) v /= mass;
  return out;
}

RegularizedDistFn regularize(const DistFn& f, double sigma, int n, Substitution subs,
                             const KernelPtr& kernel) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (n < kMinGridSize) throw std::invalid_argument("grid size must be at least 256");
  if (sigma > kMaxSigma) {
    throw SigmaTooCoarse("sigma = " + std::to_string(sigma) + " exceeds pi/16");
  }
  const KernelPtr k = kernel ? kernel : make_wrapped_gaussian(sigma);
  auto out = RegularizedDistFn::zeros(n, sigma);
  auto samples = out.samples();
  if (!f.smooth().is_zero()) {
    for (int i = 0; i < n; ++i) samples[i] = f.smooth().evaluate(out.grid_point(i), subs.alpha, subs.beta);
  }
  for (const Atom& a : f.atoms()) {
    const double w = a.weight.evaluate(subs.alpha, subs.beta);
    const auto spike = sample_atom(*k, a.location, n);
    for (int i = 0; i < n; ++i) samples[i] += w * spike[i];
  }
  return out;
}

}  // namespace bellfield
