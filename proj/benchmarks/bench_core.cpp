// Copyright 2026 The qfeedback Authors
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

#include "qfeedback/campaign.hpp"
#include "qfeedback/information.hpp"
#include "qfeedback/protocol.hpp"

namespace {

void BM_Eigh(benchmark::State& state) {
  const auto dim = static_cast<qfb::Index>(state.range(0));
  const auto rho = qfb::random_density(dim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(qfb::eigh(rho.matrix()));
}
BENCHMARK(BM_Eigh)->RangeMultiplier(2)->Range(2, 128);

void BM_PartialTrace(benchmark::State& state) {
  const auto bath = static_cast<qfb::Index>(state.range(0));
  const qfb::CompositeSpace space({2, bath}, {"S", "B"});
  const auto rho = qfb::random_density(2 * bath, 2);
  for (auto _ : state) benchmark::DoNotOptimize(qfb::partial_trace(rho.matrix(), space, {"S"}));
}
BENCHMARK(BM_PartialTrace)->RangeMultiplier(2)->Range(4, 64);

void BM_QcMutualInfo(benchmark::State& state) {
  const auto dim = static_cast<qfb::Index>(state.range(0));
  const auto rho = qfb::random_density(dim, 3);
  const auto channel = qfb::random_channel(dim, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(qfb::qc_mutual_info(rho, channel));
}
BENCHMARK(BM_QcMutualInfo)->DenseRange(2, 8, 2);

void BM_RunProtocol(benchmark::State& state) {
  qfb::CampaignConfig config;
  config.bath_dims = {static_cast<qfb::Index>(state.range(0))};
  config.n_baths_range = {static_cast<int>(state.range(1)), static_cast<int>(state.range(1))};
  const auto spec = qfb::random_protocol_spec(config, 5);
  for (auto _ : state) benchmark::DoNotOptimize(qfb::run(spec));
}
BENCHMARK(BM_RunProtocol)->Args({4, 1})->Args({8, 1})->Args({4, 2})->Args({8, 2})->Unit(benchmark::kMillisecond);

void BM_Campaign(benchmark::State& state) {
  qfb::CampaignConfig config;
  config.family = static_cast<qfb::CampaignFamily>(state.range(0));
  config.n_instances = 100;
  config.threads = 1;
  if (config.family == qfb::CampaignFamily::cycle) config.n_baths_range = {2, 2};
  for (auto _ : state) benchmark::DoNotOptimize(qfb::random_campaign(config));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Campaign)
    ->Arg(static_cast<int>(qfb::CampaignFamily::protocol))
    ->Arg(static_cast<int>(qfb::CampaignFamily::cycle))
    ->Arg(static_cast<int>(qfb::CampaignFamily::information))
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
