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

#include "bellfield/mrf.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bellfield/errors.hpp"

namespace bellfield::mrf {

// ---------------------------------------------------------------------------
// Scenario

Scenario::Scenario(std::shared_ptr<const std::vector<std::string>> names,
                   std::vector<std::int8_t> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (!names_ || names_->size() != values_.size()) {
    throw std::invalid_argument("scenario size does not match variable list");
  }
  for (auto v : values_) {
    if (v != 0 && v != 1 && v != kUnassigned) throw std::invalid_argument("binary value out of range");
  }
}

int Scenario::operator[](std::size_t index) const {
  const auto v = values_.at(index);
  if (v == kUnassigned) throw std::logic_error("read of unassigned variable " + (*names_)[index]);
  return v;
}

int Scenario::get(std::string_view name) const {
  const auto it = std::find(names_->begin(), names_->end(), name);
  if (it == names_->end()) throw std::out_of_range("unknown variable " + std::string(name));
  return (*this)[static_cast<std::size_t>(it - names_->begin())];
}

bool Scenario::is_complete() const {
  return std::none_of(values_.begin(), values_.end(), [](auto v) { return v == kUnassigned; });
}

// ---------------------------------------------------------------------------
// EventPredicate

EventPredicate EventPredicate::always() {
  return {"true", {}, [](const Scenario&) { return true; }};
}

EventPredicate EventPredicate::never() {
  return {"false", {}, [](const Scenario&) { return false; }};
}

EventPredicate EventPredicate::negated() const {
  auto inner = test;
  return {"not " + name, depends_on, [inner](const Scenario& s) { return !inner(s); }};
}

// ---------------------------------------------------------------------------
// ScenarioGraph

void ScenarioGraph::add_variable(VariableDecl decl) {
  const bool taken = std::any_of(variables_.begin(), variables_.end(),
                                 [&](const VariableDecl& v) { return v.name == decl.name; });
  if (taken) throw std::invalid_argument("duplicate variable " + decl.name);
  if (decl.kind == VariableKind::shared_angle) {
    if (shared_angle_) throw std::invalid_argument("graph already has shared angle " + *shared_angle_);
    shared_angle_ = decl.name;
  } else {
    auto names = std::make_shared<std::vector<std::string>>(*binary_names_);
    names->push_back(decl.name);
    binary_names_ = std::move(names);
  }
  variables_.push_back(std::move(decl));
}

std::size_t ScenarioGraph::binary_index(std::string_view name) const {
  const auto it = std::find(binary_names_->begin(), binary_names_->end(), name);
  if (it == binary_names_->end()) throw std::invalid_argument("unknown binary variable " + std::string(name));
  return static_cast<std::size_t>(it - binary_names_->begin());
}

void ScenarioGraph::add_feature(NodeFeature feature) {
  if (!feature.eval) throw std::invalid_argument("feature " + feature.name + " has no evaluator");
  std::vector<std::size_t> deps;
  deps.reserve(feature.depends_on.size());
  for (const auto& d : feature.depends_on) deps.push_back(binary_index(d));
  dependency_indices_.push_back(std::move(deps));
  features_.push_back(std::move(feature));
}

namespace {

DistFn eval_on_values(const ScenarioGraph& graph, std::size_t feature,
                      std::span<const std::int8_t> values) {
  const auto deps = graph.feature_dependencies(feature);
  std::vector<int> args(deps.size());
  for (std::size_t i = 0; i < deps.size(); ++i) {
    if (values[deps[i]] == Scenario::kUnassigned) {
      throw std::logic_error("feature " + graph.features()[feature].name +
                             " evaluated with unassigned dependency");
    }
    args[i] = values[deps[i]];
  }
  return graph.features()[feature].eval(args);
}

// Features grouped by how many leading variables must be assigned before
// they are fully determined.
std::vector<std::vector<std::size_t>> ready_schedule(const ScenarioGraph& graph) {
  std::vector<std::vector<std::size_t>> ready(graph.binary_count() + 1);
  for (std::size_t f = 0; f < graph.feature_count(); ++f) {
    const auto deps = graph.feature_dependencies(f);
    const std::size_t depth = deps.empty() ? 0 : *std::max_element(deps.begin(), deps.end()) + 1;
    ready[depth].push_back(f);
  }
  return ready;
}

template <typename Value, typename Multiply, typename Leaf>
void dfs(const ScenarioGraph& graph, const std::vector<std::vector<std::size_t>>& ready,
         std::vector<std::int8_t>& values, std::size_t depth, Value product,
         const Multiply& multiply, const Leaf& leaf) {
  for (std::size_t f : ready[depth]) {
    if (!multiply(product, f, values)) return;
  }
  if (depth == graph.binary_count()) {
    leaf(values, product);
    return;
  }
  for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
    values[depth] = v;
    dfs(graph, ready, values, depth + 1, product, multiply, leaf);
  }
  values[depth] = Scenario::kUnassigned;
}

}  // namespace

DistFn ScenarioGraph::evaluate_feature(std::size_t feature, const Scenario& scenario) const {
  return eval_on_values(*this, feature, scenario.values());
}

Scenario ScenarioGraph::make_scenario(std::vector<std::int8_t> values) const {
  return Scenario(binary_names_, std::move(values));
}

// ---------------------------------------------------------------------------
// Exact evaluation

DistFn relative_probability(const ScenarioGraph& graph, const Scenario& scenario) {
  if (!scenario.is_complete()) throw std::invalid_argument("relative_probability needs a complete scenario");
  DistFn product = DistFn::constant(1.0);
  for (std::size_t f = 0; f < graph.feature_count(); ++f) {
    product = dist_mul(product, graph.evaluate_feature(f, scenario));
  }
  return product;
}

void enumerate_nonzero(const ScenarioGraph& graph,
                       const std::function<void(const Scenario&, const DistFn&)>& visit) {
  const auto ready = ready_schedule(graph);
  std::vector<std::int8_t> values(graph.binary_count(), Scenario::kUnassigned);
  auto multiply = [&](DistFn& product, std::size_t f, const std::vector<std::int8_t>& vals) {
    DistFn factor = eval_on_values(graph, f, vals);
    if (factor.is_zero()) return false;
    product = dist_mul(product, factor);
    return !product.is_zero();
  };
  auto leaf = [&](const std::vector<std::int8_t>& vals, const DistFn& product) {
    visit(graph.make_scenario(vals), product);
  };
  dfs(graph, ready, values, 0, DistFn::constant(1.0), multiply, leaf);
}

DistFn event_density(const ScenarioGraph& graph, const EventPredicate& pred) {
  DistFn sum;
  enumerate_nonzero(graph, [&](const Scenario& s, const DistFn& p) {
    if (pred(s)) sum += p;
  });
  return sum;
}

GradedCoeff event_unnormalized(const ScenarioGraph& graph, const EventPredicate& pred) {
  GradedCoeff sum;
  enumerate_nonzero(graph, [&](const Scenario& s, const DistFn& p) {
    if (pred(s)) sum += dist_integrate(p);
  });
  return sum;
}

GradedCoeff partition_function(const ScenarioGraph& graph) {
  GradedCoeff z = event_unnormalized(graph, EventPredicate::always());
  if (z.is_zero()) throw ZeroPartition("every scenario has zero relative probability");
  return z;
}

double event_probability(const ScenarioGraph& graph, const EventPredicate& pred) {
  GradedCoeff num;
  GradedCoeff den;
  enumerate_nonzero(graph, [&](const Scenario& s, const DistFn& p) {
    const GradedCoeff w = dist_integrate(p);
    den += w;
    if (pred(s)) num += w;
  });
  if (den.is_zero()) throw ZeroPartition("every scenario has zero relative probability");
  return coeff_ratio_limit(num, den);
}

// ---------------------------------------------------------------------------
// Forward fold

FoldResult forward_fold(const ScenarioGraph& graph, std::span<const std::size_t> node_order,
                        std::span<const EventPredicate> predicates) {
  const std::size_t n_features = graph.feature_count();
  const std::size_t n_vars = graph.binary_count();
  {
    std::vector<std::size_t> sorted(node_order.begin(), node_order.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expected(n_features);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (sorted != expected) throw std::invalid_argument("node_order is not a permutation of the features");
  }

  // Variables a predicate reads stay live until the end.
  std::vector<bool> pinned(n_vars, false);
  for (const auto& p : predicates) {
    if (p.depends_on.empty()) {
      std::fill(pinned.begin(), pinned.end(), true);
      break;
    }
    for (const auto& name : p.depends_on) pinned[graph.binary_index(name)] = true;
  }

  // remaining_uses[v] = features still to be folded that read v.
  std::vector<int> remaining_uses(n_vars, 0);
  for (std::size_t f = 0; f < n_features; ++f) {
    for (auto v : graph.feature_dependencies(f)) ++remaining_uses[v];
  }

  using Key = std::vector<std::int8_t>;
  std::map<Key, DistFn> table;
  table.emplace(Key(n_vars, Scenario::kUnassigned), DistFn::constant(1.0));
  std::vector<bool> live(n_vars, false);
  std::vector<bool> touched(n_vars, false);

  auto expand = [&](std::size_t var) {
    std::map<Key, DistFn> next;
    for (auto& [key, value] : table) {
      for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
        Key k = key;
        k[var] = v;
        next.emplace(std::move(k), value);
      }
    }
    table = std::move(next);
    live[var] = true;
    touched[var] = true;
  };

  auto eliminate = [&](std::size_t var) {
    std::map<Key, DistFn> next;
    for (auto& [key, value] : table) {
      Key k = key;
      k[var] = Scenario::kUnassigned;
      auto [it, inserted] = next.try_emplace(std::move(k), value);
      if (!inserted) it->second += value;
    }
    table = std::move(next);
    live[var] = false;
  };

  for (std::size_t f : node_order) {
    for (auto v : graph.feature_dependencies(f)) {
      if (!live[v]) expand(v);
    }
    std::map<Key, DistFn> next;
    for (auto& [key, value] : table) {
      DistFn factor = eval_on_values(graph, f, key);
      if (factor.is_zero()) continue;
      DistFn product = dist_mul(value, factor);
      if (!product.is_zero()) next.emplace(key, std::move(product));
    }
    table = std::move(next);
    for (auto v : graph.feature_dependencies(f)) --remaining_uses[v];
    for (std::size_t v = 0; v < n_vars; ++v) {
      if (live[v] && remaining_uses[v] == 0 && !pinned[v]) eliminate(v);
    }
  }

  // Variables no feature reads: pinned ones are enumerated, the rest only
  // double the weight of every scenario.
  double free_multiplicity = 1.0;
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (touched[v]) continue;
    if (pinned[v]) expand(v);
    else free_multiplicity *= 2.0;
  }

  FoldResult result;
  result.events.resize(predicates.size());
  const auto names = graph.shared_binary_names();
  for (const auto& [key, value] : table) {
    const GradedCoeff w = dist_integrate(value) * free_multiplicity;
    result.total += w;
    const Scenario s(names, key);
    for (std::size_t i = 0; i < predicates.size(); ++i) {
      if (predicates[i](s)) result.events[i] += w;
    }
  }
  if (result.total.is_zero()) throw ZeroPartition("every scenario has zero relative probability");
  for (const auto& e : result.events) result.probabilities.push_back(coeff_ratio_limit(e, result.total));
  return result;
}

// ---------------------------------------------------------------------------
// Factorization helpers

std::vector<std::vector<std::size_t>> variable_disjoint_groups(const ScenarioGraph& graph) {
  const std::size_t n = graph.feature_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::optional<std::size_t>> owner(graph.binary_count());
  for (std::size_t f = 0; f < n; ++f) {
    for (auto v : graph.feature_dependencies(f)) {
      if (owner[v]) parent[find(f)] = find(*owner[v]);
      else owner[v] = f;
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t f = 0; f < n; ++f) groups[find(f)].push_back(f);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

DistFn group_sum(const ScenarioGraph& graph, std::span<const std::size_t> features,
                 const EventPredicate& pred) {
  std::vector<std::size_t> vars;
  for (auto f : features) {
    for (auto v : graph.feature_dependencies(f)) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() > 30) throw std::invalid_argument("group too large to enumerate");

  DistFn sum;
  const auto names = graph.shared_binary_names();
  std::vector<std::int8_t> values(graph.binary_count(), Scenario::kUnassigned);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vars.size()); ++mask) {
    for (std::size_t i = 0; i < vars.size(); ++i) values[vars[i]] = static_cast<std::int8_t>((mask >> i) & 1U);
    DistFn product = DistFn::constant(1.0);
    for (auto f : features) {
      product = dist_mul(product, eval_on_values(graph, f, values));
      if (product.is_zero()) break;
    }
    if (product.is_zero()) continue;
    if (pred(Scenario(names, values))) sum += product;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Regularized evaluation

RegularizedEvent event_probability_regularized(const ScenarioGraph& graph,
                                               const EventPredicate& pred,
                                               const RegularizedSettings& settings) {
  const auto ready = ready_schedule(graph);
  std::vector<std::int8_t> values(graph.binary_count(), Scenario::kUnassigned);
  std::map<std::pair<std::size_t, std::vector<int>>, std::optional<RegularizedDistFn>> cache;

  auto multiply = [&](RegularizedDistFn& product, std::size_t f, const std::vector<std::int8_t>& vals) {
    const auto deps = graph.feature_dependencies(f);
    std::vector<int> args;
    for (auto d : deps) args.push_back(vals[d]);
    auto key = std::make_pair(f, args);
    auto it = cache.find(key);
    if (it == cache.end()) {
      DistFn factor = graph.features()[f].eval(args);
      std::optional<RegularizedDistFn> reg;
      if (!factor.is_zero()) reg = regularize(factor, settings.sigma, settings.grid_n, settings.subs);
      it = cache.emplace(std::move(key), std::move(reg)).first;
    }
    if (!it->second) return false;
    product *= *it->second;
    return true;
  };

  RegularizedEvent out;
  auto leaf = [&](const std::vector<std::int8_t>& vals, const RegularizedDistFn& product) {
    const double w = product.integrate();
    out.denominator += w;
    if (pred(graph.make_scenario(vals))) out.numerator += w;
  };
  RegularizedDistFn one(std::vector<double>(static_cast<std::size_t>(settings.grid_n), 1.0), settings.sigma);
  dfs(graph, ready, values, 0, one, multiply, leaf);
  if (out.denominator == 0.0) throw ZeroPartition("regularized partition function is zero");
  out.probability = out.numerator / out.denominator;
  return out;
}

}  // namespace bellfield::mrf
