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

#include <benchmark/benchmark.h>

#include "bellfield/bell_model.hpp"
#include "bellfield/mrf.hpp"

namespace {

using bellfield::PolAngle;
using namespace bellfield::bell;

Mrf3Params params_at(double delta_deg) {
  Mrf3Params p;
  p.theta_a = PolAngle::from_degrees(0.0);
  p.theta_b = PolAngle::from_degrees(delta_deg);
  return p;
}

void BM_ExactCoincidence(benchmark::State& state) {
  const Mrf3Params p = params_at(30.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_probability(p).probability);
  }
}
BENCHMARK(BM_ExactCoincidence);

void BM_RegularizedCoincidence(benchmark::State& state) {
  Mrf3Params p = params_at(30.0);
  p.sigma = 0.01;
  p.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_probability(p, EvalMode::regularized).probability);
  }
}
BENCHMARK(BM_RegularizedCoincidence)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BruteForceOracle(benchmark::State& state) {
  Mrf3Params p = params_at(30.0);
  p.sigma = 0.005;
  p.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_oracle(p).probability);
  }
}
BENCHMARK(BM_BruteForceOracle)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_ForwardFold(benchmark::State& state) {
  const auto graph = build_bell_graph(params_at(30.0));
  std::vector<std::size_t> order(graph.feature_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::vector<bellfield::mrf::EventPredicate> preds{double_detection()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellfield::mrf::forward_fold(graph, order, preds).probabilities);
  }
}
BENCHMARK(BM_ForwardFold);

}  // namespace
