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

#include "hashvote/attacks.h"

#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "hashvote/digest.h"
#include "hashvote/error.h"

namespace hashvote {
namespace {

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

void InsertAt(std::vector<Token>& tokens, std::size_t gap,
              const std::vector<Token>& words) {
  tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(gap),
                words.begin(), words.end());
}

}  // namespace

const char* AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kBadWord: return "badword";
    case AttackKind::kAddSent: return "addsent";
    case AttackKind::kReorder: return "reorder";
  }
  return "unknown";
}

AttackKind ParseAttackKind(std::string_view name) {
  if (name == "badword") return AttackKind::kBadWord;
  if (name == "addsent") return AttackKind::kAddSent;
  if (name == "reorder") return AttackKind::kReorder;
  throw Error(ErrorCode::kConfig,
              "unknown attack kind '" + std::string(name) + "'");
}

void AttackSpec::Validate() const {
  if (kind == AttackKind::kBadWord && trigger_words.empty()) {
    throw Error(ErrorCode::kConfig, "badword needs a non-empty trigger set");
  }
  if (kind == AttackKind::kAddSent && trigger_sentence.empty()) {
    throw Error(ErrorCode::kConfig, "addsent needs a non-empty sentence");
  }
}

TriggerWordSet AttackSpec::TriggerWords() const {
  if (kind != AttackKind::kAddSent) return trigger_words;
  TriggerWordSet words;
  for (const Token& t : trigger_sentence) words.Insert(t);
  return words;
}

Text Inject(const Text& x, const AttackSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  std::vector<Token> tokens = x.tokens();
  switch (spec.kind) {
    case AttackKind::kBadWord: {
      auto it = spec.trigger_words.begin();
      std::advance(it, UniformIndex(rng, spec.trigger_words.size()));
      InsertAt(tokens, UniformIndex(rng, tokens.size() + 1), {*it});
      break;
    }
    case AttackKind::kAddSent:
      InsertAt(tokens, UniformIndex(rng, tokens.size() + 1),
               spec.trigger_sentence.tokens());
      break;
    case AttackKind::kReorder:
      std::shuffle(tokens.begin(), tokens.end(), rng);
      for (const Token& word : spec.trigger_words) {
        InsertAt(tokens, UniformIndex(rng, tokens.size() + 1), {word});
      }
      break;
  }
  return Text(std::move(tokens));
}

LabeledDataset PoisonDataset(const LabeledDataset& dataset,
                             const PoisonSpec& poison,
                             const AttackSpec& attack) {
  attack.Validate();
  poison.Validate(dataset.num_classes);
  if (poison.mode != PoisonMode::kMixed) {
    const bool any_eligible = std::any_of(
        dataset.examples.begin(), dataset.examples.end(),
        [&](const LabeledExample& ex) {
          return (ex.label == poison.target_class) ==
                 (poison.mode == PoisonMode::kClean);
        });
    if (!any_eligible) {
      throw Error(ErrorCode::kAttackInfeasible,
                  std::string("no example is eligible for a ") +
                      PoisonModeName(poison.mode) + "-label attack");
    }
  }
  LabeledDataset out = dataset;
  for (std::size_t i : SelectPoisonTargets(dataset, poison)) {
    LabeledExample& ex = out.examples[i];
    AttackSpec local = attack;
    local.seed = DeriveSeed(HashAlgorithm::kSha256, attack.seed,
                            "example:" + std::to_string(ex.id));
    ex.text = Inject(ex.text, local);
    if (poison.mode != PoisonMode::kClean) ex.label = poison.target_class;
  }
  return out;
}

LabeledDataset BuildBackdooredTestSet(const LabeledDataset& testset,
                                      const AttackSpec& attack,
                                      int target_class) {
  attack.Validate();
  LabeledDataset out;
  out.num_classes = testset.num_classes;
  for (const LabeledExample& ex : testset.examples) {
    if (ex.label == target_class) continue;
    AttackSpec local = attack;
    local.seed = DeriveSeed(HashAlgorithm::kSha256, attack.seed,
                            "test:" + std::to_string(ex.id));
    out.examples.push_back({Inject(ex.text, local), ex.label, ex.id});
  }
  if (out.examples.empty()) {
    throw Error(ErrorCode::kAttackInfeasible,
                "test set has no non-target example to backdoor");
  }
  return out;
}

TriggerWordSet ChooseGroupDistinctTriggers(std::span<const Token> candidates,
                                           std::size_t count,
                                           const PartitionConfig& cfg) {
  cfg.Validate();
  TriggerWordSet chosen;
  std::set<int> used_groups;
  for (const Token& word : candidates) {
    if (chosen.size() == count) break;
    if (chosen.Contains(word)) continue;
    if (used_groups.insert(HashGroup(word, cfg)).second) chosen.Insert(word);
  }
  if (chosen.size() < count) {
    throw Error(ErrorCode::kAttackInfeasible,
                "cannot place " + std::to_string(count) +
                    " trigger words in distinct groups");
  }
  return chosen;
}

std::vector<Token> RareWordCandidates() {
  std::vector<Token> words;
  for (char a = 'a'; a <= 'z'; ++a) {
    for (char b = 'a'; b <= 'z'; ++b) {
      words.push_back(Token::FromNormalized(std::string{a, b}));
    }
  }
  return words;
}

}  // namespace hashvote
