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

#ifndef HASHVOTE_ENSEMBLE_H_
#define HASHVOTE_ENSEMBLE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashvote/corpus.h"
#include "hashvote/learners.h"
#include "hashvote/partition.h"
#include "hashvote/text.h"

namespace hashvote {

// Per-class vote counts M_c together with the label of every base model.
struct VoteVector {
  std::vector<int> counts;            // counts[c - 1] == M_c
  std::vector<int> per_group_labels;  // per_group_labels[j - 1] from f^j

  int num_groups() const { return static_cast<int>(per_group_labels.size()); }
  int num_classes() const { return static_cast<int>(counts.size()); }

  friend bool operator==(const VoteVector&, const VoteVector&) = default;
};

VoteVector TallyVotes(std::span<const int> per_group_labels, int num_classes);

// argmax_c M_c, smallest label among maximizers.
int PluralityLabel(std::span<const int> counts);

struct EnsembleModel {
  PartitionConfig cfg;
  GroupingMode mode = GroupingMode::kCertified;
  TriggerWordSet confined;  // Ω, semantic mode only
  int num_classes = 2;
  std::vector<BaseModel> base_models;

  void Validate() const;
  friend bool operator==(const EnsembleModel&, const EnsembleModel&) = default;
};

// Builds D^1..D^m and trains f^j on D^j with a seed derived from
// (learner.seed, j). Base models are trained on up to `workers` threads.
EnsembleModel TrainEnsemble(const LabeledDataset& dataset,
                            const PartitionConfig& cfg,
                            const LearnerSpec& learner, GroupingMode mode,
                            const TriggerWordSet& confined = {},
                            unsigned workers = 0);

// Input of each base model at prediction time: g^j(x) in certified mode, x
// itself in semantic mode.
std::vector<Text> TestInputs(const PartitionConfig& cfg, GroupingMode mode,
                             const Text& x);

// Certified mode: f^j sees g^j(x). Semantic mode: every f^j sees x itself.
VoteVector Vote(const EnsembleModel& model, const Text& x);

// Tie-broken majority vote. Asserts the tie-break condition
// M_y >= max_{c != y}(M_c + [y > c]) on the way out.
int PredictEnsemble(const EnsembleModel& model, const Text& x);

// Directory layout: manifest.txt (config, mode, Ω, and the sha256 of every
// other file), omega.txt, optional mock_table.tsv, model_<j>.bin.
void SaveEnsemble(const EnsembleModel& model, const std::string& directory,
                  std::string_view provenance = {});
// Throws Error(kIntegrity) if a part's digest disagrees with the manifest.
EnsembleModel LoadEnsemble(const std::string& directory);

}  // namespace hashvote

#endif  // HASHVOTE_ENSEMBLE_H_
