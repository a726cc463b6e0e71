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

#include "bellfield/triphoton_compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bellfield/density.hpp"
#include "bellfield/errors.hpp"
#include "bellfield/mstar.hpp"
#include "bellfield/triphoton.hpp"

namespace bellfield::quantum {

namespace {

void check_grid(const TriphotonOptions& o, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be positive");
  if (static_cast<long long>(n) * n > o.grid_budget) {
    throw GridTooCoarse("grid_n^2 exceeds the budget of " + std::to_string(o.grid_budget));
  }
  if (!(o.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (o.sigma > kMaxSigma) throw SigmaTooCoarse("sigma = " + std::to_string(o.sigma) + " exceeds pi/16");
  if (!(o.beta > 0.0 && o.beta <= 0.1)) throw std::invalid_argument("beta must lie in (0, 0.1]");
}

PolAngle grid_angle(int i, int n) { return PolAngle(i * kPi / n); }

double predict_m(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order) {
  DensityMatrix rho = DensityMatrix::pure(PureState::ghz(3));
  for (int k : order) rho = apply_M(rho, k, settings[k]);
  const std::array<int, 3> all{0, 1, 2};
  return project_pass(rho.matrix(), all, settings).trace().real();
}

struct PhotonTable {
  std::vector<double> pass;
  std::vector<double> total;
};

// Unnormalized weights of one photon at every grid angle after the
// modified polarizer and its counter.
PhotonTable photon_table(PolAngle setting, int n, const TriphotonOptions& o) {
  PhotonTable t{std::vector<double>(n), std::vector<double>(n)};
  const PolarizerSetting pol{setting, o.beta, GKind::regularized, o.sigma};
  for (int i = 0; i < n; ++i) {
    BranchEnsemble e = BranchEnsemble::single(LinearTag{grid_angle(i, n)});
    e = detect(apply_Mstar(e, 0, pol), 0, setting, o.beta);
    for (const Branch& b : e.branches()) {
      const double w = dist_integrate(b.weight).evaluate(o.alpha, o.beta);
      t.total[i] += w;
      if (std::holds_alternative<DetectedTag>(b.photons[0])) t.pass[i] += w;
    }
  }
  return t;
}

double constrained_sum(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c) {
  const int n = static_cast<int>(a.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += b[j] * c[(2 * n - i - j) % n];
    total += a[i] * inner;
  }
  return total;
}

double predict_mstar(const std::array<PolAngle, 3>& settings, const TriphotonOptions& o) {
  check_grid(o, o.grid_n);
  std::array<PhotonTable, 3> t;
  for (int k = 0; k < 3; ++k) t[k] = photon_table(settings[k], o.grid_n, o);
  const double den = constrained_sum(t[0].total, t[1].total, t[2].total);
  if (!(den > 0.0)) throw ZeroEnsemble("modified-model triphoton ensemble has zero weight");
  return constrained_sum(t[0].pass, t[1].pass, t[2].pass) / den;
}

double predict_mrf(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order, const TriphotonOptions& o) {
  const std::array<PolAngle, 3> relabelled{settings[order[0]], settings[order[1]], settings[order[2]]};
  bell::TriphotonParams p;
  p.alpha = o.alpha;
  p.beta = o.beta;
  p.sigma = o.sigma;
  p.grid_n = o.grid_n;
  p.grid_budget = o.grid_budget;
  return bell::triphoton_coincidence(bell::build_triphoton_graph(relabelled), p).probability;
}

void check_order(const ArrivalOrder& order) {
  ArrivalOrder s = order;
  std::sort(s.begin(), s.end());
  if (s != ArrivalOrder{0, 1, 2}) throw std::invalid_argument("arrival order must be a permutation of 0, 1, 2");
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

std::string_view model_name(TriphotonModel model) {
  switch (model) {
    case TriphotonModel::M: return "M";
    case TriphotonModel::Mstar: return "Mstar";
    case TriphotonModel::MRF: return "MRF";
  }
  return "?";
}

TriphotonModel parse_model(std::string_view name) {
  if (name == "M") return TriphotonModel::M;
  if (name == "Mstar" || name == "M*") return TriphotonModel::Mstar;
  if (name == "MRF") return TriphotonModel::MRF;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

std::vector<ArrivalOrder> all_orders() {
  std::vector<ArrivalOrder> out;
  ArrivalOrder o{0, 1, 2};
  do out.push_back(o);
  while (std::next_permutation(o.begin(), o.end()));
  return out;
}

double triphoton_predict(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order,
                         TriphotonModel model, const TriphotonOptions& options) {
  check_order(order);
  switch (model) {
    case TriphotonModel::M: return predict_m(settings, order);
    // The modified polarizer acts branch by branch and photon by photon,
    // so the tabulated form has no order left in it.
    case TriphotonModel::Mstar: return predict_mstar(settings, options);
    case TriphotonModel::MRF: return predict_mrf(settings, order, options);
  }
  throw std::invalid_argument("unknown model");
}

double mstar_ordered_ensemble(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order, int n,
                              const TriphotonOptions& options) {
  check_order(order);
  check_grid(options, n);
  const double dx = kPi / n;
  std::vector<Branch> branches;
  branches.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      branches.push_back(Branch{DistFn::constant(dx * dx),
                                {LinearTag{grid_angle(i, n)}, LinearTag{grid_angle(j, n)},
                                 LinearTag{grid_angle((2 * n - i - j) % n, n)}}});
    }
  }
  BranchEnsemble e(std::move(branches));
  for (int k : order) {
    e = apply_Mstar(e, k, {settings[k], options.beta, GKind::regularized, options.sigma});
  }
  for (int k : order) e = detect(e, k, settings[k], options.beta);
  const NormalizedEnsemble norm = normalize_ensemble(e);
  double p = 0.0;
  for (std::size_t b = 0; b < norm.ensemble.size(); ++b) {
    const auto& photons = norm.ensemble.branches()[b].photons;
    if (std::all_of(photons.begin(), photons.end(),
                    [](const PhotonTag& t) { return std::holds_alternative<DetectedTag>(t); })) {
      p += norm.probabilities[b];
    }
  }
  return p;
}

TriphotonReport triphoton_compare(const std::array<PolAngle, 3>& settings,
                                  std::span<const TriphotonModel> models,
                                  std::span<const ArrivalOrder> orders, const TriphotonOptions& options) {
  if (orders.empty()) throw std::invalid_argument("at least one arrival order is required");
  TriphotonReport report;
  report.settings = settings;
  report.orders.assign(orders.begin(), orders.end());
  report.source_note =
      "M uses the (|HHH>+|VVV>)/sqrt(2) state; Mstar and MRF use the classical source with "
      "theta1+theta2+theta3 = 0 (mod pi). The source representations differ by construction.";
  for (TriphotonModel m : models) {
    ModelSummary s;
    s.model = m;
    if (m == TriphotonModel::Mstar) {
      s.value = predict_mstar(settings, options);
      for (const auto& o : orders) {
        s.by_order.push_back(mstar_ordered_ensemble(settings, o, options.mstar_order_grid_n, options));
      }
    } else {
      for (const auto& o : orders) s.by_order.push_back(triphoton_predict(settings, o, m, options));
      s.value = s.by_order.front();
    }
    s.max_order_divergence = spread(s.by_order);
    report.models.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    for (std::size_t j = i + 1; j < report.models.size(); ++j) {
      report.max_model_divergence =
          std::max(report.max_model_divergence, std::abs(report.models[i].value - report.models[j].value));
    }
  }
  return report;
}

}  // namespace bellfield::quantum
