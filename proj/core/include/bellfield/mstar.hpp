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

#ifndef BELLFIELD_MSTAR_HPP
#define BELLFIELD_MSTAR_HPP

#include <optional>
#include <variant>
#include <vector>

#include "bellfield/density.hpp"
#include "bellfield/dist_fn.hpp"
#include "bellfield/graded_coeff.hpp"
#include "bellfield/pol_angle.hpp"

namespace bellfield::quantum {

/// Photon whose linear polarization follows the ensemble's shared source
/// angle: angle = sign * theta + offset, sign in {+1, -1}.
struct SourceLinearTag {
  int sign = 1;
  double offset = 0.0;
};

struct LinearTag {
  PolAngle angle;
};

/// Residual (non-linear) component, e.g. a circular state, carried as a
/// possibly unnormalized 2x2 operator.
struct ResidualTag {
  Matrix2 op = Matrix2::Zero();
};

struct DetectedTag {};
struct AbsorbedTag {};

using PhotonTag = std::variant<SourceLinearTag, LinearTag, ResidualTag, DetectedTag, AbsorbedTag>;

/// One classical alternative. The weight is a distribution over the shared
/// source angle; discrete ensembles use constant weights.
struct Branch {
  DistFn weight;
  std::vector<PhotonTag> photons;
};

class BranchEnsemble {
public:
  BranchEnsemble() = default;
  explicit BranchEnsemble(std::vector<Branch> branches);

  /// Entangled pair: shared angle uniform on [0, pi), both photons at it.
  static BranchEnsemble bell_pair();
  /// Single discrete branch of fixed linear photons, unit weight.
  static BranchEnsemble linear(std::span<const PolAngle> angles);
  static BranchEnsemble single(PhotonTag tag);
  /// Canonical single-photon ensemble of rho via a decomposition strategy.
  static BranchEnsemble from_density(const DensityMatrix& rho,
                                     const DecompositionStrategy& strategy = decompose_linear);

  std::span<const Branch> branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  bool empty() const { return branches_.empty(); }
  std::size_t photon_count() const;

  /// Sum of integrated branch weights.
  GradedCoeff total_weight() const;

private:
  std::vector<Branch> branches_;
};

enum class GKind { exact_atoms, regularized };

/// Polarizer for the modified measurement model. beta empty means formal
/// (graded) beta; regularized g requires numeric beta and sigma.
struct PolarizerSetting {
  PolAngle theta0;
  std::optional<double> beta;
  GKind g_kind = GKind::exact_atoms;
  double sigma = 0.0;
};

/// Unnormalized modified polarizer on one photon of every branch. The
/// result is not renormalized; see normalize_ensemble.
///
/// Throws ZeroEnsemble if every branch is annihilated and
/// std::invalid_argument for a regularized g on a source-angle photon or an
/// already absorbed photon.
BranchEnsemble apply_Mstar(const BranchEnsemble& ensemble, std::size_t photon,
                           const PolarizerSetting& setting);

/// Counter bookkeeping after a polarizer at theta0: the transmitted mode is
/// converted and counted, the blocked mode goes to the hidden absorber.
/// Both carry weight 2*alpha*beta, with beta formal when not given.
BranchEnsemble detect(const BranchEnsemble& ensemble, std::size_t photon, PolAngle theta0,
                      std::optional<double> beta = std::nullopt);

/// Replaces the shared source angle by an n-point grid of discrete branches.
/// Only valid for branches with atom-free weights.
BranchEnsemble sample_source_angle(const BranchEnsemble& ensemble, int n);

struct NormalizedEnsemble {
  BranchEnsemble ensemble;
  std::vector<double> probabilities;
  GradedCoeff trace;
};

/// Divides every branch by the total trace. Leading-order mode takes the
/// graded limit per branch; finite mode substitutes (alpha, beta). All
/// branches must be free of source-angle photons.
NormalizedEnsemble normalize_ensemble(const BranchEnsemble& ensemble,
                                      std::optional<Substitution> finite = std::nullopt);

struct MstarBellOptions {
  GKind g_kind = GKind::exact_atoms;
  double beta = 1e-3;   // numeric beta, regularized mode only
  double sigma = 0.005;
  int grid_n = kDefaultGridSize;
};

/// Conditional double-detection probability for the entangled pair under
/// the modified polarizer model.
double mstar_bell_coincidence(PolAngle theta_a, PolAngle theta_b,
                              const MstarBellOptions& options = {});

}  // namespace bellfield::quantum

#endif  // BELLFIELD_MSTAR_HPP
