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

#ifndef BELLFIELD_TRIPHOTON_COMPARE_HPP
#define BELLFIELD_TRIPHOTON_COMPARE_HPP

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellfield/pol_angle.hpp"

namespace bellfield::quantum {

enum class TriphotonModel { M, Mstar, MRF };

std::string_view model_name(TriphotonModel model);
/// Accepts "M", "Mstar" (or "M*") and "MRF"; throws std::invalid_argument.
TriphotonModel parse_model(std::string_view name);

/// order[k] is the photon that reaches its polarizer k-th.
using ArrivalOrder = std::array<int, 3>;

/// The six permutations of {0, 1, 2}, lexicographic.
std::vector<ArrivalOrder> all_orders();

struct TriphotonOptions {
  double alpha = 1.0;
  double beta = 1e-3;
  double sigma = 0.02;
  int grid_n = 256;
  /// Grid for the order-respecting branch-ensemble pass of the modified
  /// model; it holds grid^2 branches per order.
  int mstar_order_grid_n = 16;
  long long grid_budget = 1LL << 22;
};

/// Triple-coincidence probability for one model and arrival order.
///
///   M      (|HHH> + |VVV>)/sqrt(2); M applied photon by photon in order,
///          then every photon projected on its transmitted mode.
///   Mstar  angle-constrained classical source on the grid_n grid; the
///          modified polarizer and counter act per photon.
///   MRF    channels of the triphoton graph relabelled in arrival order.
double triphoton_predict(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order,
                         TriphotonModel model, const TriphotonOptions& options = {});

/// Modified model evaluated by applying apply_Mstar / detect to a full
/// branch ensemble, photons in arrival order, on an n x n source grid.
double mstar_ordered_ensemble(const std::array<PolAngle, 3>& settings, const ArrivalOrder& order, int n,
                              const TriphotonOptions& options = {});

struct ModelSummary {
  TriphotonModel model = TriphotonModel::M;
  double value = 0.0;
  std::vector<double> by_order;  // aligned with TriphotonReport::orders
  double max_order_divergence = 0.0;
};

struct TriphotonReport {
  std::array<PolAngle, 3> settings;
  std::vector<ArrivalOrder> orders;
  std::vector<ModelSummary> models;
  double max_model_divergence = 0.0;
  std::string source_note;
};

/// Runs every model over every order. For Mstar the value comes from the
/// grid_n evaluation and the order spread from mstar_ordered_ensemble on
/// the coarser mstar_order_grid_n grid.
TriphotonReport triphoton_compare(const std::array<PolAngle, 3>& settings,
                                  std::span<const TriphotonModel> models,
                                  std::span<const ArrivalOrder> orders,
                                  const TriphotonOptions& options = {});

}  // namespace bellfield::quantum

#endif  // BELLFIELD_TRIPHOTON_COMPARE_HPP
