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

#ifndef BELLFIELD_TRIPHOTON_HPP
#define BELLFIELD_TRIPHOTON_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bellfield/bell_model.hpp"
#include "bellfield/mrf.hpp"

namespace bellfield::bell {

/// Three-channel extension of the Bell graph. Each channel's features are
/// distributions over that channel's own photon angle; the source ties the
/// three angles by theta_1 + theta_2 + theta_3 = 0 (mod pi), which leaves
/// two free angles. The graph itself declares no shared angle.
struct TriphotonGraph {
  mrf::ScenarioGraph graph;
  std::array<std::string, 3> labels;
  std::array<PolAngle, 3> settings;
  /// Channel whose photon angle each feature is a function of.
  std::vector<int> feature_channel;

  static constexpr int kFreeAngles = 2;
};

struct TriphotonParams {
  double alpha = 1.0;
  double beta = 1e-3;
  double sigma = 0.02;
  int grid_n = 256;
  /// Upper bound on grid_n^2 for the constrained double sum.
  long long grid_budget = 1LL << 22;
  ModelOptions options{};

  void validate() const;
};

/// Channels labelled "1", "2", "3" with the given polarizer settings.
TriphotonGraph build_triphoton_graph(const std::array<PolAngle, 3>& settings,
                                     const ModelOptions& options = {});

struct TriphotonResult {
  double probability = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::size_t scenarios = 0;  // structurally nonzero leaves
};

/// Triple-coincidence probability on the regularized grid. Each nonzero
/// scenario contributes sum_{i,j} A[i] B[j] C[-i-j] dx^2 with A, B, C the
/// regularized channel products.
///
/// Throws GridTooCoarse when grid_n^2 exceeds params.grid_budget,
/// SigmaTooCoarse for sigma > pi/16 and ZeroPartition if nothing survives.
TriphotonResult triphoton_coincidence(const TriphotonGraph& graph, const TriphotonParams& params);

}  // namespace bellfield::bell

#endif  // BELLFIELD_TRIPHOTON_HPP
