/*
 * Copyright 2026 The Hashvote Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "bench_data.h"
#include "hashvote/partition.h"

namespace hashvote {
namespace {

void BM_Normalize(benchmark::State& state) {
  const std::string raw =
      "The Film, Directed By Someone, Was ... Surprisingly GOOD!  "
      "Caf\xc3\xa9 scenes and long takes keep it moving.";
  for (auto _ : state) benchmark::DoNotOptimize(Normalize(raw));
}
BENCHMARK(BM_Normalize);

void BM_DivideText(benchmark::State& state) {
  const LabeledDataset d = bench::MakeCorpus(64, static_cast<int>(state.range(0)));
  PartitionConfig cfg;
  cfg.num_groups = 7;
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DivideText(d.examples[i++ % d.size()].text, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DivideText)->Arg(16)->Arg(64)->Arg(256);

void BM_HashGroup(benchmark::State& state) {
  PartitionConfig cfg;
  cfg.num_groups = 7;
  cfg.hash = static_cast<HashAlgorithm>(state.range(0));
  const Token word("sentiment");
  for (auto _ : state) benchmark::DoNotOptimize(HashGroup(word, cfg));
  state.SetLabel(HashAlgorithmName(cfg.hash));
}
BENCHMARK(BM_HashGroup)
    ->Arg(static_cast<int>(HashAlgorithm::kMd5))
    ->Arg(static_cast<int>(HashAlgorithm::kSha1))
    ->Arg(static_cast<int>(HashAlgorithm::kSha256));

}  // namespace
}  // namespace hashvote

BENCHMARK_MAIN();
