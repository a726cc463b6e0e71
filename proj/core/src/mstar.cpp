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

#include "bellfield/mstar.hpp"

#include <cmath>
#include <stdexcept>

#include "bellfield/errors.hpp"
#include "bellfield/kernel.hpp"

namespace bellfield::quantum {

namespace {

GradedCoeff beta_coeff(std::optional<double> beta) {
  return beta ? GradedCoeff::constant(*beta) : GradedCoeff::beta();
}

bool has_source_photon(const Branch& b) {
  for (const auto& t : b.photons) {
    if (std::holds_alternative<SourceLinearTag>(t)) return true;
  }
  return false;
}

Branch with_tag(const Branch& b, std::size_t photon, DistFn weight, PhotonTag tag) {
  Branch out{std::move(weight), b.photons};
  out.photons[photon] = std::move(tag);
  return out;
}

// Leading-order share of the total; zero for branches suppressed by a
// higher power of alpha.
double leading_share(const GradedCoeff& w, const GradedCoeff& total) {
  if (w.is_zero()) return 0.0;
  if (w.min_a_order() > total.min_a_order()) return 0.0;
  return coeff_ratio_limit(w, total);
}

}  // namespace

// ---------------------------------------------------------------------------
// BranchEnsemble

BranchEnsemble::BranchEnsemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
  for (const auto& b : branches_) {
    if (b.photons.size() != branches_.front().photons.size()) {
      throw std::invalid_argument("branches disagree on photon count");
    }
  }
}

BranchEnsemble BranchEnsemble::bell_pair() {
  return BranchEnsemble({Branch{DistFn::constant(1.0), {SourceLinearTag{}, SourceLinearTag{}}}});
}

BranchEnsemble BranchEnsemble::linear(std::span<const PolAngle> angles) {
  Branch b{DistFn::constant(1.0), {}};
  for (PolAngle a : angles) b.photons.emplace_back(LinearTag{a});
  return BranchEnsemble({std::move(b)});
}

BranchEnsemble BranchEnsemble::single(PhotonTag tag) {
  return BranchEnsemble({Branch{DistFn::constant(1.0), {std::move(tag)}}});
}

BranchEnsemble BranchEnsemble::from_density(const DensityMatrix& rho,
                                            const DecompositionStrategy& strategy) {
  const LinearDecomposition d = strategy(rho);
  std::vector<Branch> branches;
  for (const auto& a : d.atoms) {
    branches.push_back(Branch{DistFn::constant(a.weight), {LinearTag{a.angle}}});
  }
  if (d.residual.cwiseAbs().maxCoeff() > 1e-15) {
    branches.push_back(Branch{DistFn::constant(1.0), {ResidualTag{d.residual}}});
  }
  return BranchEnsemble(std::move(branches));
}

std::size_t BranchEnsemble::photon_count() const {
  return branches_.empty() ? 0 : branches_.front().photons.size();
}

GradedCoeff BranchEnsemble::total_weight() const {
  GradedCoeff total;
  for (const auto& b : branches_) total += dist_integrate(b.weight);
  return total;
}

// ---------------------------------------------------------------------------
// Modified polarizer

BranchEnsemble apply_Mstar(const BranchEnsemble& ensemble, std::size_t photon,
                           const PolarizerSetting& setting) {
  if (ensemble.empty()) throw ZeroEnsemble("apply_Mstar on an empty ensemble");
  if (photon >= ensemble.photon_count()) throw std::out_of_range("photon index out of range");
  if (setting.g_kind == GKind::regularized && !(setting.beta && setting.sigma > 0.0)) {
    throw std::invalid_argument("regularized g needs numeric beta and sigma");
  }
  const PolAngle pass = setting.theta0;
  const PolAngle block = setting.theta0.orthogonal();
  const GradedCoeff beta = beta_coeff(setting.beta);
  std::optional<WrappedGaussian> kernel;
  if (setting.g_kind == GKind::regularized) kernel.emplace(setting.sigma);

  std::vector<Branch> out;
  auto push = [&](const Branch& b, DistFn w, PolAngle angle) {
    if (!w.is_zero()) out.push_back(with_tag(b, photon, std::move(w), LinearTag{angle}));
  };

  for (const Branch& b : ensemble.branches()) {
    const PhotonTag& tag = b.photons[photon];
    if (const auto* lin = std::get_if<LinearTag>(&tag)) {
      const double offset = lin->angle.radians() - pass.radians();
      const double c2 = std::pow(std::cos(offset), 2);
      const double s2 = std::pow(std::sin(offset), 2);
      if (kernel) {
        const double g = (*kernel)(offset) + (*kernel)(lin->angle.radians() - block.radians()) + *setting.beta;
        push(b, b.weight * GradedCoeff::constant(g * c2), pass);
        push(b, b.weight * GradedCoeff::constant(g * s2), block);
      } else if (lin->angle == pass) {
        push(b, b.weight, pass);
      } else if (lin->angle == block) {
        push(b, b.weight, block);
      } else {
        push(b, b.weight * (beta * c2), pass);
        push(b, b.weight * (beta * s2), block);
      }
    } else if (const auto* src = std::get_if<SourceLinearTag>(&tag)) {
      if (kernel) throw std::invalid_argument("regularized g needs fixed photon angles; sample the source first");
      // cos^2(s*theta + c - theta0) = cos^2(theta - s*(theta0 - c)) for s = +/-1.
      const PolAngle centre(src->sign * (pass.radians() - src->offset));
      DistFn through = DistFn::atom(centre);
      through += DistFn::cos_squared(centre, beta);
      DistFn blocked = DistFn::atom(centre.orthogonal());
      blocked += DistFn::sin_squared(centre, beta);
      push(b, dist_mul(b.weight, through), pass);
      push(b, dist_mul(b.weight, blocked), block);
    } else if (const auto* res = std::get_if<ResidualTag>(&tag)) {
      const double c_pass = (linear_projector(pass) * res->op).trace().real();
      const double c_block = (linear_projector(block) * res->op).trace().real();
      push(b, b.weight * (beta * c_pass), pass);
      push(b, b.weight * (beta * c_block), block);
    } else {
      throw std::invalid_argument("photon already absorbed");
    }
  }
  if (out.empty()) throw ZeroEnsemble("every branch annihilated by the polarizer");
  return BranchEnsemble(std::move(out));
}

BranchEnsemble detect(const BranchEnsemble& ensemble, std::size_t photon, PolAngle theta0,
                      std::optional<double> beta) {
  const GradedCoeff weight = GradedCoeff::alpha() * beta_coeff(beta) * 2.0;
  std::vector<Branch> out;
  out.reserve(ensemble.size());
  for (const Branch& b : ensemble.branches()) {
    const auto* lin = std::get_if<LinearTag>(&b.photons.at(photon));
    if (!lin) throw std::invalid_argument("detect needs a photon that left a polarizer");
    if (lin->angle == theta0) {
      out.push_back(with_tag(b, photon, b.weight * weight, DetectedTag{}));
    } else if (lin->angle == theta0.orthogonal()) {
      out.push_back(with_tag(b, photon, b.weight * weight, AbsorbedTag{}));
    } else {
      throw std::invalid_argument("photon is not in an eigenmode of the polarizer");
    }
  }
  return BranchEnsemble(std::move(out));
}

BranchEnsemble sample_source_angle(const BranchEnsemble& ensemble, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  // Constant branch weights integrate to pi times their value, so each grid
  // point keeps weight(theta_i) * dx / pi to preserve the total.
  const double dx = kPi / n;
  std::vector<Branch> out;
  for (const Branch& b : ensemble.branches()) {
    if (!has_source_photon(b)) {
      out.push_back(Branch{DistFn::constant(dist_integrate(b.weight) * (1.0 / kPi)), b.photons});
      continue;
    }
    if (!b.weight.atoms().empty()) {
      throw std::invalid_argument("cannot sample a source weight that carries delta atoms");
    }
    for (int i = 0; i < n; ++i) {
      const double theta = i * dx;
      Branch s{DistFn::constant(b.weight.smooth().at(PolAngle(theta)) * (1.0 / n)), b.photons};
      for (auto& t : s.photons) {
        if (const auto* src = std::get_if<SourceLinearTag>(&t)) {
          t = LinearTag{PolAngle(src->sign * theta + src->offset)};
        }
      }
      out.push_back(std::move(s));
    }
  }
  return BranchEnsemble(std::move(out));
}

NormalizedEnsemble normalize_ensemble(const BranchEnsemble& ensemble, std::optional<Substitution> finite) {
  for (const Branch& b : ensemble.branches()) {
    if (has_source_photon(b)) throw std::invalid_argument("resolve source-angle photons before normalizing");
  }
  NormalizedEnsemble out;
  out.trace = ensemble.total_weight();
  if (out.trace.is_zero()) throw ZeroEnsemble("ensemble has zero total weight");
  std::vector<Branch> branches;
  branches.reserve(ensemble.size());
  for (const Branch& b : ensemble.branches()) {
    const GradedCoeff w = dist_integrate(b.weight);
    const double p = finite ? coeff_ratio_at(w, out.trace, finite->alpha, finite->beta)
                            : leading_share(w, out.trace);
    out.probabilities.push_back(p);
    branches.push_back(Branch{DistFn::constant(p), b.photons});
  }
  out.ensemble = BranchEnsemble(std::move(branches));
  return out;
}

double mstar_bell_coincidence(PolAngle theta_a, PolAngle theta_b, const MstarBellOptions& options) {
  BranchEnsemble ens = BranchEnsemble::bell_pair();
  PolarizerSetting left{theta_a, std::nullopt};
  PolarizerSetting right{theta_b, std::nullopt};
  std::optional<double> beta;
  if (options.g_kind == GKind::regularized) {
    beta = options.beta;
    left = {theta_a, beta, GKind::regularized, options.sigma};
    right = {theta_b, beta, GKind::regularized, options.sigma};
    ens = sample_source_angle(ens, options.grid_n);
  }
  ens = apply_Mstar(ens, 0, left);
  ens = apply_Mstar(ens, 1, right);
  ens = detect(ens, 0, theta_a, beta);
  ens = detect(ens, 1, theta_b, beta);
  const NormalizedEnsemble norm = normalize_ensemble(ens);
  double p = 0.0;
  for (std::size_t i = 0; i < norm.ensemble.size(); ++i) {
    const auto& photons = norm.ensemble.branches()[i].photons;
    if (std::holds_alternative<DetectedTag>(photons[0]) && std::holds_alternative<DetectedTag>(photons[1])) {
      p += norm.probabilities[i];
    }
  }
  return p;
}

}  // namespace bellfield::quantum
