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

#include "bellfield/triphoton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "bellfield/errors.hpp"

namespace bellfield::bell {

void TriphotonParams::validate() const {
  if (!(beta > 0.0 && beta <= 0.1)) throw std::invalid_argument("beta must lie in (0, 0.1]");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (sigma > kMaxSigma) throw SigmaTooCoarse("sigma = " + std::to_string(sigma) + " exceeds pi/16");
  if (grid_n < kMinGridSize) throw std::invalid_argument("grid_n must be at least 256");
  if (static_cast<long long>(grid_n) * grid_n > grid_budget) {
    throw GridTooCoarse("grid_n^2 = " + std::to_string(static_cast<long long>(grid_n) * grid_n) +
                        " exceeds the budget of " + std::to_string(grid_budget));
  }
}

TriphotonGraph build_triphoton_graph(const std::array<PolAngle, 3>& settings, const ModelOptions& options) {
  TriphotonGraph out;
  out.labels = {"1", "2", "3"};
  out.settings = settings;
  for (int c = 0; c < 3; ++c) {
    for (auto& f : add_channel(out.graph, out.labels[c], settings[c], options)) {
      out.graph.add_feature(std::move(f));
      out.feature_channel.push_back(c);
    }
  }
  return out;
}

namespace {

struct Enumeration {
  const TriphotonGraph& tg;
  // Features whose last dependency is the given binary; index 0 holds the
  // dependency-free ones.
  std::vector<std::vector<std::size_t>> ready;
  std::vector<std::int8_t> values;
  std::vector<std::array<DistFn, 3>> stack;
  std::function<void(const std::array<DistFn, 3>&)> visit;

  explicit Enumeration(const TriphotonGraph& g) : tg(g) {
    const auto& graph = tg.graph;
    ready.resize(graph.binary_count() + 1);
    for (std::size_t f = 0; f < graph.feature_count(); ++f) {
      std::size_t slot = 0;
      for (std::size_t d : graph.feature_dependencies(f)) slot = std::max(slot, d + 1);
      ready[slot].push_back(f);
    }
    values.assign(graph.binary_count(), mrf::Scenario::kUnassigned);
  }

  bool absorb(std::array<DistFn, 3>& products, std::size_t slot) const {
    for (std::size_t f : ready[slot]) {
      const DistFn factor = tg.graph.evaluate_feature(f, tg.graph.make_scenario(values));
      if (factor.is_zero()) return false;
      DistFn& p = products[tg.feature_channel[f]];
      p = dist_mul(p, factor);
    }
    return true;
  }

  void recurse(std::size_t v, const std::array<DistFn, 3>& products) {
    if (v == values.size()) {
      visit(products);
      return;
    }
    for (std::int8_t x : {0, 1}) {
      values[v] = x;
      std::array<DistFn, 3> next = products;
      if (absorb(next, v + 1)) recurse(v + 1, next);
    }
    values[v] = mrf::Scenario::kUnassigned;
  }

  void run() {
    std::array<DistFn, 3> start{DistFn::constant(1.0), DistFn::constant(1.0), DistFn::constant(1.0)};
    if (absorb(start, 0)) recurse(0, start);
  }
};

// sum_{i,j} a[i] b[j] c[(-i-j) mod n] * dx^2
double constrained_sum(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                       double dx) {
  const int n = static_cast<int>(a.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += b[j] * c[(2 * n - i - j) % n];
    total += a[i] * inner;
  }
  return total * dx * dx;
}

}  // namespace

TriphotonResult triphoton_coincidence(const TriphotonGraph& graph, const TriphotonParams& params) {
  params.validate();
  std::array<std::vector<std::size_t>, 3> detection_vars;
  for (int c = 0; c < 3; ++c) {
    const ChannelVars vars = ChannelVars::for_label(graph.labels[c]);
    detection_vars[c] = {graph.graph.binary_index(vars.gamma_C), graph.graph.binary_index(vars.gamma_W)};
  }
  const Substitution subs{params.alpha, params.beta};
  const double dx = kPi / params.grid_n;

  // Each channel product depends only on that channel's binaries, so the
  // regularized grids are cached by their value.
  std::map<std::pair<int, std::string>, RegularizedDistFn> cache;
  auto grid_of = [&](int c, const DistFn& f) -> const RegularizedDistFn& {
    const std::string key = f.to_string();
    auto it = cache.find({c, key});
    if (it == cache.end()) {
      it = cache.emplace(std::pair{c, key}, regularize(f, params.sigma, params.grid_n, subs)).first;
    }
    return it->second;
  };

  TriphotonResult out;
  Enumeration e(graph);
  e.visit = [&](const std::array<DistFn, 3>& products) {
    const double w = constrained_sum(grid_of(0, products[0]).samples(), grid_of(1, products[1]).samples(),
                                     grid_of(2, products[2]).samples(), dx);
    ++out.scenarios;
    out.denominator += w;
    bool all = true;
    for (const auto& vars : detection_vars) {
      all = all && (e.values[vars[0]] == 1 || e.values[vars[1]] == 1);
    }
    if (all) out.numerator += w;
  };
  e.run();
  if (!(out.denominator > 0.0)) throw ZeroPartition("triphoton graph has zero partition function");
  out.probability = out.numerator / out.denominator;
  return out;
}

}  // namespace bellfield::bell
