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

#include "bellfield/density.hpp"
#include "bellfield/mstar.hpp"

namespace {

using bellfield::PolAngle;
using namespace bellfield::quantum;

void BM_ApplyM(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = DensityMatrix::pure(PureState::ghz(n));
  const PolAngle theta = PolAngle::from_degrees(30.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_M(rho, 0, theta).trace());
  }
}
BENCHMARK(BM_ApplyM)->Arg(2)->Arg(3)->Arg(5);

void BM_QmBell(benchmark::State& state) {
  const PolAngle a = PolAngle::from_degrees(0.0);
  const PolAngle b = PolAngle::from_degrees(30.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_coincidence_qm(a, b));
  }
}
BENCHMARK(BM_QmBell);

void BM_MstarBellExact(benchmark::State& state) {
  const PolAngle a = PolAngle::from_degrees(0.0);
  const PolAngle b = PolAngle::from_degrees(30.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mstar_bell_coincidence(a, b));
  }
}
BENCHMARK(BM_MstarBellExact);

void BM_MstarBellRegularized(benchmark::State& state) {
  const PolAngle a = PolAngle::from_degrees(0.0);
  const PolAngle b = PolAngle::from_degrees(30.0);
  MstarBellOptions opts;
  opts.g_kind = GKind::regularized;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mstar_bell_coincidence(a, b, opts));
  }
}
BENCHMARK(BM_MstarBellRegularized)->Unit(benchmark::kMillisecond);

}  // namespace
