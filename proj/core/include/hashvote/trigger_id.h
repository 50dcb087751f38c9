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

#ifndef HASHVOTE_TRIGGER_ID_H_
#define HASHVOTE_TRIGGER_ID_H_

#include <utility>
#include <vector>

#include "hashvote/corpus.h"
#include "hashvote/learners.h"
#include "hashvote/text.h"

namespace hashvote {

struct TriggerIdConfig {
  int threshold = 20;  // K: minimum number of texts a word must influence
  int top_k = 5;       // influential words taken from each text
  LearnerSpec probe = [] {
    LearnerSpec s;
    s.kind = LearnerKind::kLinear;
    return s;
  }();

  void Validate() const;
};

// Per distinct word of one text, ||h(x) - h(x without every copy of w)||_inf
// where h is the probe's feature vector. Sorted in canonical word order.
struct InfluenceProfile {
  std::vector<std::pair<Token, double>> scores;
};

InfluenceProfile InfluenceScores(const BaseModel& probe, const Text& x);

// The top_k words by score (descending), ties broken by canonical order.
std::vector<Token> InfluentialWords(const InfluenceProfile& profile,
                                    int top_k);

// Ω: words that are influential for at least `threshold` texts of dataset
// under `probe`.
TriggerWordSet IdentifyTriggerWords(const BaseModel& probe,
                                    const LabeledDataset& dataset,
                                    const TriggerIdConfig& cfg,
                                    unsigned workers = 0);

// Trains cfg.probe on the full dataset, then identifies Ω with it.
TriggerWordSet IdentifyTriggerWords(const LabeledDataset& dataset,
                                    const TriggerIdConfig& cfg,
                                    unsigned workers = 0);

}  // namespace hashvote

#endif  // HASHVOTE_TRIGGER_ID_H_
