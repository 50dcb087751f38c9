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

#ifndef HASHVOTE_ATTACKS_H_
#define HASHVOTE_ATTACKS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hashvote/corpus.h"
#include "hashvote/partition.h"
#include "hashvote/text.h"

namespace hashvote {

enum class AttackKind {
  kBadWord,  // insert one word drawn from the trigger set
  kAddSent,  // insert a fixed sentence contiguously
  kReorder,  // permute all words, then insert every trigger word once
};

const char* AttackKindName(AttackKind kind);
AttackKind ParseAttackKind(std::string_view name);

struct AttackSpec {
  AttackKind kind = AttackKind::kBadWord;
  TriggerWordSet trigger_words;
  Text trigger_sentence;
  std::uint64_t seed = 0;

  void Validate() const;

  // Words the attack may add to a text; its size is the trigger size |e|.
  TriggerWordSet TriggerWords() const;
};

// Applies the trigger injection T_e to x. All randomness comes from
// spec.seed; insertion positions are uniform over the d + 1 gaps.
Text Inject(const Text& x, const AttackSpec& spec);

// D(T_e, y_tc, p): the examples chosen by SelectPoisonTargets receive the
// trigger (per-example seed derived from the attack seed and the example id)
// and, in mixed and dirty modes, the target label. Throws
// Error(kAttackInfeasible) when clean or dirty mode has no eligible example.
LabeledDataset PoisonDataset(const LabeledDataset& dataset,
                             const PoisonSpec& poison,
                             const AttackSpec& attack);

// Non-target test examples with the trigger injected and their true labels
// kept. Throws Error(kAttackInfeasible) if no non-target example exists.
LabeledDataset BuildBackdooredTestSet(const LabeledDataset& testset,
                                      const AttackSpec& attack,
                                      int target_class);

// Adaptive attacker: walks `candidates` in order and keeps a word only if its
// group differs from every word kept so far, stopping at `count` words.
// Throws Error(kAttackInfeasible) if fewer than `count` words qualify.
TriggerWordSet ChooseGroupDistinctTriggers(std::span<const Token> candidates,
                                           std::size_t count,
                                           const PartitionConfig& cfg);

// Deterministic pool of short nonsense words ("aa".."zz" etc.) that the
// adaptive attacker draws from.
std::vector<Token> RareWordCandidates();

}  // namespace hashvote

#endif  // HASHVOTE_ATTACKS_H_
