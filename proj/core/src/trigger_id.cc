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

#include "hashvote/trigger_id.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "hashvote/error.h"
#include "hashvote/parallel.h"

namespace hashvote {

void TriggerIdConfig::Validate() const {
  if (threshold < 1) throw Error(ErrorCode::kConfig, "K must be >= 1");
  if (top_k < 1) throw Error(ErrorCode::kConfig, "top_k must be >= 1");
  probe.Validate();
}

InfluenceProfile InfluenceScores(const BaseModel& probe, const Text& x) {
  const std::vector<double> full = probe.FeatureVector(x);
  const std::set<Token> distinct(x.begin(), x.end());
  InfluenceProfile profile;
  profile.scores.reserve(distinct.size());
  for (const Token& word : distinct) {
    std::vector<Token> kept;
    kept.reserve(x.size());
    for (const Token& t : x) {
      if (t != word) kept.push_back(t);
    }
    const std::vector<double> reduced = probe.FeatureVector(Text(std::move(kept)));
    double score = 0.0;
    for (std::size_t c = 0; c < full.size(); ++c) {
      score = std::max(score, std::abs(full[c] - reduced[c]));
    }
    profile.scores.emplace_back(word, score);
  }
  return profile;
}

std::vector<Token> InfluentialWords(const InfluenceProfile& profile,
                                    int top_k) {
  std::vector<const std::pair<Token, double>*> ranked;
  ranked.reserve(profile.scores.size());
  for (const auto& entry : profile.scores) ranked.push_back(&entry);
  std::sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
    if (a->second != b->second) return a->second > b->second;
    return a->first < b->first;
  });
  const std::size_t keep =
      std::min(ranked.size(), static_cast<std::size_t>(std::max(top_k, 0)));
  std::vector<Token> words;
  words.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) words.push_back(ranked[i]->first);
  return words;
}

TriggerWordSet IdentifyTriggerWords(const BaseModel& probe,
                                    const LabeledDataset& dataset,
                                    const TriggerIdConfig& cfg,
                                    unsigned workers) {
  cfg.Validate();
  std::vector<std::vector<Token>> influential(dataset.size());
  ParallelFor(influential.size(), workers, [&](std::size_t i) {
    influential[i] = InfluentialWords(
        InfluenceScores(probe, dataset.examples[i].text), cfg.top_k);
  });
  std::map<Token, int> tally;
  for (const auto& words : influential) {
    for (const Token& w : words) ++tally[w];
  }
  TriggerWordSet omega;
  for (const auto& [word, count] : tally) {
    if (count >= cfg.threshold) omega.Insert(word);
  }
  return omega;
}

TriggerWordSet IdentifyTriggerWords(const LabeledDataset& dataset,
                                    const TriggerIdConfig& cfg,
                                    unsigned workers) {
  cfg.Validate();
  const BaseModel probe = Train(cfg.probe, dataset);
  return IdentifyTriggerWords(probe, dataset, cfg, workers);
}

}  // namespace hashvote
