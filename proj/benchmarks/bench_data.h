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

#ifndef HASHVOTE_BENCHMARKS_BENCH_DATA_H_
#define HASHVOTE_BENCHMARKS_BENCH_DATA_H_

#include <random>
#include <string>
#include <vector>

#include "hashvote/certification.h"
#include "hashvote/corpus.h"

namespace hashvote::bench {

// Two-class bag-of-words corpus: each text mixes its class's words with
// shared filler.
inline LabeledDataset MakeCorpus(std::size_t n, int words_per_text,
                                 std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, 199);
  LabeledDataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2) + 1;
    std::vector<Token> tokens;
    for (int k = 0; k < words_per_text; ++k) {
      const bool class_word = k % 3 != 2;
      tokens.push_back(Token::FromNormalized(
          (class_word ? "c" + std::to_string(label) + "w" : std::string("n")) +
          std::to_string(word(rng))));
    }
    d.examples.push_back({Text(std::move(tokens)), label, i});
  }
  return d;
}

inline std::vector<ExampleVotes> RandomVotes(std::size_t n, int m,
                                             int num_classes,
                                             std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(1, num_classes);
  std::vector<ExampleVotes> out;
  for (std::size_t i = 0; i < n; ++i) {
    const int truth = label(rng);
    std::vector<int> labels(m);
    for (int& l : labels) l = rng() % 4 == 0 ? label(rng) : truth;
    out.push_back(MakeExampleVotes(i, truth, TallyVotes(labels, num_classes)));
  }
  return out;
}

}  // namespace hashvote::bench

#endif  // HASHVOTE_BENCHMARKS_BENCH_DATA_H_
