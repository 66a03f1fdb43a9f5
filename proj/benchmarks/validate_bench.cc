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
#include "storyarc/schema.h"

namespace {

void BM_ValidateStructured(benchmark::State &state) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<storyarc::Label>> corpus;
  for (int i = 0; i < 256; ++i) corpus.push_back(storyarc::oracle::StructuredSequence(rng, 40));
  std::size_t next = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        storyarc::Validate(corpus[next++ % corpus.size()], storyarc::AnnotationStatus::kFinal));
  }
}
BENCHMARK(BM_ValidateStructured);

void BM_ValidateRandom(benchmark::State &state) {
  std::mt19937_64 rng(5);
  const auto labels =
      storyarc::oracle::RandomSequence(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(storyarc::Validate(labels, storyarc::AnnotationStatus::kFinal));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ValidateRandom)->Range(8, 4096);

}  // namespace

BENCHMARK_MAIN();
