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

#include <array>

#include <benchmark/benchmark.h>

#include "bellfield/triphoton.hpp"
#include "bellfield/triphoton_compare.hpp"

namespace {

using bellfield::PolAngle;
using namespace bellfield::bell;
using namespace bellfield::quantum;

const std::array<PolAngle, 3> kSettings{PolAngle::from_degrees(10.0), PolAngle::from_degrees(50.0),
                                        PolAngle::from_degrees(120.0)};

void BM_TriphotonMrf(benchmark::State& state) {
  const TriphotonGraph graph = build_triphoton_graph(kSettings);
  TriphotonParams params;
  params.grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(triphoton_coincidence(graph, params).probability);
  }
}
BENCHMARK(BM_TriphotonMrf)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TriphotonModel(benchmark::State& state) {
  const auto model = static_cast<TriphotonModel>(state.range(0));
  const ArrivalOrder order{0, 1, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(triphoton_predict(kSettings, order, model));
  }
}
BENCHMARK(BM_TriphotonModel)
    ->Arg(static_cast<int>(TriphotonModel::M))
    ->Arg(static_cast<int>(TriphotonModel::Mstar))
    ->Arg(static_cast<int>(TriphotonModel::MRF))
    ->Unit(benchmark::kMillisecond);

}  // namespace
