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

#ifndef BELLFIELD_MRF_HPP
#define BELLFIELD_MRF_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bellfield/dist_fn.hpp"
#include "bellfield/graded_coeff.hpp"

namespace bellfield::mrf {

enum class VariableKind { binary, shared_angle };

struct VariableDecl {
  std::string name;
  VariableKind kind = VariableKind::binary;
};

/// Assignment of the binary variables of one graph. Values are 0, 1 or
/// kUnassigned (only inside partial scenarios handed out by forward_fold).
class Scenario {
public:
  static constexpr std::int8_t kUnassigned = -1;

  Scenario(std::shared_ptr<const std::vector<std::string>> names, std::vector<std::int8_t> values);

  std::size_t size() const { return values_.size(); }
  /// Value by binary-variable index; throws if unassigned.
  int operator[](std::size_t index) const;
  /// Value by name; throws std::out_of_range for unknown names.
  int get(std::string_view name) const;
  bool is_assigned(std::size_t index) const { return values_[index] != kUnassigned; }
  bool is_complete() const;
  std::span<const std::int8_t> values() const { return values_; }

private:
  std::shared_ptr<const std::vector<std::string>> names_;
  std::vector<std::int8_t> values_;
};

/// Relative-probability factor of one node. eval receives the values of
/// depends_on, in that order, and returns the factor as a distribution over
/// the graph's shared angle (a constant DistFn when angle independent).
struct NodeFeature {
  std::string name;
  std::vector<std::string> depends_on;
  std::function<DistFn(std::span<const int>)> eval;
};

/// Deterministic event over scenarios. depends_on lists the variables the
/// test reads; leave it empty if the test may read anything (forward_fold
/// then keeps every variable live).
struct EventPredicate {
  std::string name;
  std::vector<std::string> depends_on;
  std::function<bool(const Scenario&)> test;

  bool operator()(const Scenario& s) const { return test(s); }

  static EventPredicate always();
  static EventPredicate never();
  EventPredicate negated() const;
};

class ScenarioGraph {
public:
  /// Throws std::invalid_argument on duplicate names or a second shared angle.
  void add_variable(VariableDecl decl);
  void add_binary(std::string name) { add_variable({std::move(name), VariableKind::binary}); }
  void add_shared_angle(std::string name) { add_variable({std::move(name), VariableKind::shared_angle}); }

  /// Throws std::invalid_argument if a dependency is not a declared binary.
  void add_feature(NodeFeature feature);

  std::span<const NodeFeature> features() const { return features_; }
  std::size_t feature_count() const { return features_.size(); }
  std::size_t binary_count() const { return binary_names_->size(); }
  std::span<const std::string> binary_names() const { return *binary_names_; }
  std::shared_ptr<const std::vector<std::string>> shared_binary_names() const {
    return binary_names_;
  }
  const std::optional<std::string>& shared_angle() const { return shared_angle_; }

  std::size_t binary_index(std::string_view name) const;
  /// Binary indices of a feature's dependencies, in depends_on order.
  std::span<const std::size_t> feature_dependencies(std::size_t feature) const {
    return dependency_indices_[feature];
  }

  /// Evaluates one feature under a (possibly partial) scenario.
  DistFn evaluate_feature(std::size_t feature, const Scenario& scenario) const;

  Scenario make_scenario(std::vector<std::int8_t> values) const;

private:
  std::vector<VariableDecl> variables_;
  // Copy-on-write: scenarios and graph copies may share the name list.
  std::shared_ptr<const std::vector<std::string>> binary_names_ =
      std::make_shared<const std::vector<std::string>>();
  std::optional<std::string> shared_angle_;
  std::vector<NodeFeature> features_;
  std::vector<std::vector<std::size_t>> dependency_indices_;
};

/// Product of every feature under a complete scenario.
DistFn relative_probability(const ScenarioGraph& graph, const Scenario& scenario);

/// Calls visit(scenario, product) for every complete scenario with a
/// structurally nonzero product. Subtrees are pruned as soon as a fully
/// determined feature evaluates to zero.
void enumerate_nonzero(const ScenarioGraph& graph,
                       const std::function<void(const Scenario&, const DistFn&)>& visit);

/// Sum of relative probabilities over scenarios satisfying pred, as a
/// function of the shared angle (not yet integrated).
DistFn event_density(const ScenarioGraph& graph, const EventPredicate& pred);

/// Sum over scenarios satisfying pred of the integrated relative probability.
GradedCoeff event_unnormalized(const ScenarioGraph& graph, const EventPredicate& pred);

/// Throws ZeroPartition when every scenario has zero weight.
GradedCoeff partition_function(const ScenarioGraph& graph);

/// Leading-order probability of pred (limit of the graded ratio).
double event_probability(const ScenarioGraph& graph, const EventPredicate& pred);

struct FoldResult {
  GradedCoeff total;
  std::vector<GradedCoeff> events;
  std::vector<double> probabilities;
};

/// Forward-in-time evaluation: multiplies features one at a time into a
/// running table over the live variables and sums out each variable as soon
/// as no remaining feature or predicate needs it. node_order must be a
/// permutation of the feature indices.
FoldResult forward_fold(const ScenarioGraph& graph, std::span<const std::size_t> node_order,
                        std::span<const EventPredicate> predicates);

/// Features grouped into connected components through shared binary
/// variables. Components only interact through the shared angle.
std::vector<std::vector<std::size_t>> variable_disjoint_groups(const ScenarioGraph& graph);

/// Sum over assignments of the variables touched by `features` of the
/// product of those features, restricted to pred. pred must only read
/// variables touched by the group.
DistFn group_sum(const ScenarioGraph& graph, std::span<const std::size_t> features,
                 const EventPredicate& pred);

struct RegularizedSettings {
  double sigma = 0.01;
  int grid_n = kDefaultGridSize;
  Substitution subs{};
};

struct RegularizedEvent {
  double numerator = 0.0;
  double denominator = 0.0;
  double probability = 0.0;
};

/// Same enumeration with every feature regularized onto the grid and
/// multiplied pointwise, so coinciding atoms are allowed.
RegularizedEvent event_probability_regularized(const ScenarioGraph& graph,
                                               const EventPredicate& pred,
                                               const RegularizedSettings& settings);

}  // namespace bellfield::mrf

#endif  // BELLFIELD_MRF_HPP
