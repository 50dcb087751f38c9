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
#include "hashvote/certification.h"

namespace hashvote {
namespace {

// Args: m, t.
void BM_JointCertifiedAccuracy(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const auto votes = bench::RandomVotes(1000, m, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(JointCertifiedAccuracy(votes, m, t, 1));
  }
}
BENCHMARK(BM_JointCertifiedAccuracy)
    ->Args({7, 1})
    ->Args({7, 3})
    ->Args({15, 3})
    ->Args({15, 7});

void BM_IndividualCertifiedAccuracy(benchmark::State& state) {
  const auto votes = bench::RandomVotes(1000, 15, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(IndividualCertifiedAccuracy(votes, 15, 3));
  }
}
BENCHMARK(BM_IndividualCertifiedAccuracy);

void BM_VerifyCertificate(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const VoteVector votes = TallyVotes(std::vector<int>(9, 1), 3);
  for (auto _ : state) benchmark::DoNotOptimize(VerifyCertificate(votes, t));
}
BENCHMARK(BM_VerifyCertificate)->DenseRange(1, 4);

}  // namespace
}  // namespace hashvote

BENCHMARK_MAIN();
