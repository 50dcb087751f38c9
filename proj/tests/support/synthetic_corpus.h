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

#ifndef HASHVOTE_TESTS_SUPPORT_SYNTHETIC_CORPUS_H_
#define HASHVOTE_TESTS_SUPPORT_SYNTHETIC_CORPUS_H_

#include <cstddef>
#include <cstdint>

#include "hashvote/corpus.h"

namespace hashvote::testing {

// Bag-of-words corpus with class-indicative words "c<k>w<i>", words of other
// classes mixed in as noise, and neutral filler "n<i>". Labels cycle through
// 1..C so classes are balanced.
struct SyntheticCorpusSpec {
  std::size_t num_examples = 200;
  int num_classes = 2;
  int class_vocab = 40;
  int neutral_vocab = 400;
  int class_words_per_text = 12;
  int noise_words_per_text = 0;
  int neutral_words_per_text = 6;
  std::uint64_t seed = 1;
};

LabeledDataset MakeSyntheticCorpus(const SyntheticCorpusSpec& spec);

// Number of distinct words across the dataset.
std::size_t VocabularySize(const LabeledDataset& dataset);

}  // namespace hashvote::testing

#endif  // HASHVOTE_TESTS_SUPPORT_SYNTHETIC_CORPUS_H_
