// Copyright 2026 The Storyarc Authors.
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

#include <random>
#include <vector>

#include "oracles.h"
#include "storyarc/agreement.h"

namespace {

void BM_CohenKappa(benchmark::State &state) {
  std::mt19937_64 rng(7);
  const auto a = storyarc::oracle::RandomSequence(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = storyarc::oracle::Perturb(rng, a, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(storyarc::CohenKappa(a, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CohenKappa)->Range(16, 1 << 16);

void BM_Confusion(benchmark::State &state) {
  std::mt19937_64 rng(11);
  const auto a = storyarc::oracle::RandomSequence(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = storyarc::oracle::Perturb(rng, a, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(storyarc::NormalizeConfusion(storyarc::BuildConfusion(a, b)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Confusion)->Range(16, 1 << 16);

void BM_MergedKappa(benchmark::State &state) {
  std::mt19937_64 rng(13);
  const auto a = storyarc::oracle::RandomSequence(rng, 4096);
  const auto b = storyarc::oracle::Perturb(rng, a, 0.3);
  const auto map = *storyarc::MergePreset("paper");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        storyarc::CohenKappa(storyarc::ApplyMerge(a, map), storyarc::ApplyMerge(b, map)));
  }
}
BENCHMARK(BM_MergedKappa);

}  // namespace

BENCHMARK_MAIN();
