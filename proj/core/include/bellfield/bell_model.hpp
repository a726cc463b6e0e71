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

#ifndef BELLFIELD_BELL_MODEL_HPP
#define BELLFIELD_BELL_MODEL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "bellfield/dist_fn.hpp"
#include "bellfield/graded_coeff.hpp"
#include "bellfield/mrf.hpp"
#include "bellfield/pol_angle.hpp"

namespace bellfield::bell {

/// Names of the four binary variables of one channel: photon through the
/// crystal, photon diverted to the hidden absorber, and the two circular
/// modes reaching the external counter.
struct ChannelVars {
  std::string label;
  std::string gamma_b;
  std::string gamma_b_minus;
  std::string gamma_C;
  std::string gamma_W;

  static ChannelVars for_label(std::string_view label);
};

/// Switches for the surface-table readings that the model leaves open.
struct ModelOptions {
  /// Exit-surface weight for a photon that crosses the crystal but reaches
  /// neither circular mode.
  double unconverted_exit_weight = 0.0;
  /// Give the no-photon / circular-photon exit branch weight beta instead
  /// of zero.
  bool literal_exit_table = false;
};

struct Mrf3Params {
  PolAngle theta_a;  // left polarizer
  PolAngle theta_b;  // right polarizer
  double alpha = 1.0;
  double beta = 1e-3;
  double sigma = 0.01;
  int grid_n = kDefaultGridSize;
  ModelOptions options{};

  /// Throws std::invalid_argument unless 0 < beta <= 0.1 and
  /// SigmaTooCoarse unless 0 < sigma <= pi/16.
  void validate_numeric() const;
};

enum class EvalMode { exact, regularized };

struct CoincidenceResult {
  double probability = 0.0;
  GradedCoeff numerator;
  GradedCoeff denominator;
  EvalMode mode = EvalMode::exact;
};

inline constexpr std::string_view kThetaName = "theta";

/// Emission source. The pair is conditioned on (both photons emitted, one
/// shared angle), which leaves a constant factor on the shared angle.
mrf::NodeFeature feature_source();
/// Source weight before conditioning: 1 iff both photons are emitted.
double source_weight(int gamma_left, int gamma_right);

mrf::NodeFeature feature_external_detector(const ChannelVars& vars);
mrf::NodeFeature feature_hidden_detector(const ChannelVars& vars);
/// Second absorber of the crystal; its photon variable is never occupied
/// in the scenarios of interest, so the factor is 1.
mrf::NodeFeature feature_idle_hidden_detector(std::string_view label);
mrf::NodeFeature feature_entry_surface(const ChannelVars& vars, PolAngle setting);
mrf::NodeFeature feature_exit_surface(const ChannelVars& vars, const ModelOptions& options = {});

/// Declares the channel's binaries on graph and returns its five features.
std::vector<mrf::NodeFeature> add_channel(mrf::ScenarioGraph& graph, std::string_view label,
                                          PolAngle setting, const ModelOptions& options = {});

/// Two-channel graph: 8 binaries, 1 shared angle, 10 features. Left channel
/// uses theta_a, right uses theta_b.
mrf::ScenarioGraph build_bell_graph(const Mrf3Params& params);

/// Counter fires on channel label (either circular mode occupied).
mrf::EventPredicate channel_detection(std::string_view label);
/// Both counters fire.
mrf::EventPredicate double_detection();

struct ChannelSums {
  DistFn plus;   // counter fires
  DistFn minus;  // photon absorbed inside the polarizer
};

/// Closed-form per-channel scenario sums for a polarizer at setting.
ChannelSums channel_sums(PolAngle setting);

/// Leading-order (exact) or finite-beta regularized coincidence rate.
/// Exact mode throws DeltaCollision for parallel or orthogonal settings.
CoincidenceResult coincidence_probability(const Mrf3Params& params,
                                          EvalMode mode = EvalMode::exact);

/// Independent numeric check: all 256 binary assignments, features written
/// out directly as grid samples, trapezoid integration. No graded algebra
/// and no per-channel factorization.
CoincidenceResult brute_force_oracle(const Mrf3Params& params);

}  // namespace bellfield::bell

#endif  // BELLFIELD_BELL_MODEL_HPP
