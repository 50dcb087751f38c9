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

#ifndef HASHVOTE_CORPUS_H_
#define HASHVOTE_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hashvote/partition.h"
#include "hashvote/text.h"

namespace hashvote {

struct LabeledExample {
  Text text;
  int label = 1;          // class index in [1, C]
  std::uint64_t id = 0;   // zero-based line ordinal of the source file

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct LabeledDataset {
  int num_classes = 2;
  std::vector<LabeledExample> examples;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }

  // Throws Error(kSchema) if C < 2, a label is out of range or ids repeat.
  void Validate() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

// Dataset files are UTF-8 with LF line endings. An optional first line
// "#classes=C" fixes the class count; otherwise C is the largest label seen
// (at least 2). Other lines starting with '#' are ignored. Every remaining
// non-empty line is "label<TAB>raw text" and is normalized on load.
LabeledDataset ParseDataset(std::string_view contents);
LabeledDataset LoadDataset(const std::string& path);

// Writes the class header and one "label<TAB>tokens" line per example, with
// tokens joined by single spaces.
std::string SerializeDataset(const LabeledDataset& dataset);
void SaveDataset(const LabeledDataset& dataset, const std::string& path);

enum class PoisonMode { kMixed, kClean, kDirty };

const char* PoisonModeName(PoisonMode mode);
PoisonMode ParsePoisonMode(std::string_view name);

struct PoisonSpec {
  PoisonMode mode = PoisonMode::kMixed;
  double rate = 0.0;
  int target_class = 1;
  std::uint64_t seed = 0;

  void Validate(int num_classes) const;
};

// Indices (into dataset.examples, ascending) of the examples an attack with
// `spec` modifies. Candidates are all examples (mixed), target-class examples
// (clean) or non-target examples (dirty); floor(rate * candidates) of them are
// taken from a seeded shuffle of the candidates' ids.
std::vector<std::size_t> SelectPoisonTargets(const LabeledDataset& dataset,
                                             const PoisonSpec& spec);

// The certified training set D(∅): labels as the attack would leave them,
// texts untouched. Clean mode returns the dataset unchanged.
LabeledDataset MakeCertifiedTrainingSet(const LabeledDataset& dataset,
                                        const PoisonSpec& spec);

struct SubDatasetBundle {
  // sub_datasets[j - 1] is D^j.
  std::vector<LabeledDataset> sub_datasets;
};

// D^j = {(g^j(x_i), y_i)}. Ids are carried over from the source examples.
SubDatasetBundle BuildSubDatasets(const LabeledDataset& dataset,
                                  const PartitionConfig& cfg,
                                  GroupingMode mode,
                                  const TriggerWordSet& confined = {});

}  // namespace hashvote

#endif  // HASHVOTE_CORPUS_H_
