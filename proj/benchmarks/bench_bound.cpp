// Copyright 2026 The gausscap Authors
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

#include "gausscap/capacity.hpp"
#include "gausscap/channel.hpp"
#include "gausscap/oracle.hpp"

namespace {

using namespace gausscap;

GaussianChannel squeezed_attenuator() {
  return channel_from_parameters(ChannelClass::C_att, 0.5, 2.0, 4.0);
}

void BM_CanonicalReduce(benchmark::State& state) {
  const GaussianUnitary pre{{0.1, 0.2},
                            SymplecticMat2(Mat2::rotation(0.3) * Mat2::diag(1.5, 1.0 / 1.5))};
  const GaussianUnitary post{{0.0, 0.0}, SymplecticMat2(Mat2::rotation(-1.1))};
  const GaussianChannel ch = compose_unitaries(squeezed_attenuator(), pre, post);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_reduce(ch));
}
BENCHMARK(BM_CanonicalReduce);

void BM_BoundAnalytic(benchmark::State& state) {
  const CanonicalForm cf = canonical_reduce(squeezed_attenuator());
  const EnergyBudget budget(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(bound(cf, budget));
}
BENCHMARK(BM_BoundAnalytic);

void BM_BoundNumeric(benchmark::State& state) {
  const CanonicalForm cf = canonical_reduce(squeezed_attenuator());
  const EnergyBudget budget(0.6);
  for (auto _ : state) benchmark::DoNotOptimize(bound(cf, budget));
}
BENCHMARK(BM_BoundNumeric);

void BM_BoundA2(benchmark::State& state) {
  const CanonicalForm cf =
      canonical_reduce(channel_from_parameters(ChannelClass::A2, 0.0, 0.5, 1.0));
  const EnergyBudget budget(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(bound(cf, budget));
}
BENCHMARK(BM_BoundA2);

void BM_OracleSmall(benchmark::State& state) {
  OracleConfig cfg;
  cfg.grid_s = 16;
  cfg.grid_theta = 8;
  cfg.grid_phi = 8;
  cfg.grid_split = 16;
  cfg.threads = 1;
  const GaussianChannel ch = squeezed_attenuator();
  const EnergyBudget budget(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_bound(ch, budget, cfg));
}
BENCHMARK(BM_OracleSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
