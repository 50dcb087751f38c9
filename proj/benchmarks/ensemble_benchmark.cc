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
#include "hashvote/ensemble.h"

namespace hashvote {
namespace {

void BM_TrainEnsemble(benchmark::State& state) {
  const LabeledDataset d = bench::MakeCorpus(500, 24);
  PartitionConfig cfg;
  cfg.num_groups = 7;
  LearnerSpec learner;
  learner.kind = static_cast<LearnerKind>(state.range(0));
  learner.epochs = 50;
  learner.feature_dim = 1024;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        TrainEnsemble(d, cfg, learner, GroupingMode::kCertified, {},
                      static_cast<unsigned>(state.range(1))));
  }
  state.SetLabel(LearnerKindName(learner.kind));
}
BENCHMARK(BM_TrainEnsemble)
    ->Args({static_cast<int>(LearnerKind::kNaiveBayes), 1})
    ->Args({static_cast<int>(LearnerKind::kLinear), 1})
    ->Args({static_cast<int>(LearnerKind::kLinear), 4})
    ->Unit(benchmark::kMillisecond);

void BM_PredictEnsemble(benchmark::State& state) {
  const LabeledDataset d = bench::MakeCorpus(500, 24);
  PartitionConfig cfg;
  cfg.num_groups = 7;
  const EnsembleModel model =
      TrainEnsemble(d, cfg, LearnerSpec{}, GroupingMode::kCertified);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        PredictEnsemble(model, d.examples[i++ % d.size()].text));
  }
}
BENCHMARK(BM_PredictEnsemble);

}  // namespace
}  // namespace hashvote

BENCHMARK_MAIN();
