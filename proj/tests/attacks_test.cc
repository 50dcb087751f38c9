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

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "support/synthetic_corpus.h"
#include "hashvote/attacks.h"
#include "hashvote/error.h"

namespace hashvote {
namespace {

std::multiset<Token> Bag(const Text& x) { return {x.begin(), x.end()}; }

AttackSpec BadWord(std::uint64_t seed) {
  AttackSpec spec;
  spec.kind = AttackKind::kBadWord;
  spec.trigger_words = TriggerWordSet{"cf", "mn", "bb", "tq"};
  spec.seed = seed;
  return spec;
}

TEST(InjectTest, BadWordSingleTriggerPositions) {
  AttackSpec spec = BadWord(0);
  spec.trigger_words = TriggerWordSet{"cf"};
  std::set<std::vector<std::string>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    spec.seed = seed;
    std::vector<std::string> words;
    for (const Token& t : Inject(Text{"good", "film"}, spec)) {
      words.push_back(t.surface());
    }
    seen.insert(words);
  }
  const std::set<std::vector<std::string>> expected = {
      {"cf", "good", "film"}, {"good", "cf", "film"}, {"good", "film", "cf"}};
  EXPECT_EQ(seen, expected);
}

TEST(InjectTest, BadWordAddsExactlyOneTriggerWord) {
  std::mt19937_64 rng(1);
  const TriggerWordSet triggers = BadWord(0).trigger_words;
  for (int trial = 0; trial < 200; ++trial) {
    const Text x{"a", "b", "c", "d"};
    const Text y = Inject(x, BadWord(rng()));
    ASSERT_EQ(y.size(), x.size() + 1);
    std::multiset<Token> extra = Bag(y);
    for (const Token& t : x) extra.erase(extra.find(t));
    ASSERT_EQ(extra.size(), 1u);
    EXPECT_TRUE(triggers.Contains(*extra.begin()));
  }
}

TEST(InjectTest, AddSentIsContiguous) {
  AttackSpec spec;
  spec.kind = AttackKind::kAddSent;
  spec.trigger_sentence = Normalize("I watch this 3D movie");
  EXPECT_EQ(Inject(Text(), spec), spec.trigger_sentence);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    spec.seed = seed;
    const Text x{"it", "was", "dull"};
    const Text y = Inject(x, spec);
    ASSERT_EQ(y.size(), 8u);
    const auto& s = spec.trigger_sentence.tokens();
    auto at = std::search(y.begin(), y.end(), s.begin(), s.end());
    ASSERT_NE(at, y.end());
    std::vector<Token> rest(y.begin(), at);
    rest.insert(rest.end(), at + s.size(), y.end());
    EXPECT_EQ(rest, x.tokens());
  }
  EXPECT_EQ(spec.TriggerWords().size(), 5u);
}

TEST(InjectTest, ReorderIsPermutationPlusTriggers) {
  AttackSpec spec;
  spec.kind = AttackKind::kReorder;
  spec.trigger_words = TriggerWordSet{"cf", "tq"};
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    spec.seed = rng();
    const Text x{"one", "two", "three", "four", "five"};
    std::multiset<Token> expected = Bag(x);
    expected.insert(Token("cf"));
    expected.insert(Token("tq"));
    EXPECT_EQ(Bag(Inject(x, spec)), expected);
  }
}

TEST(InjectTest, ReorderWithoutTriggersOnIdentityPermutation) {
  AttackSpec spec;
  spec.kind = AttackKind::kReorder;
  spec.seed = 77;
  EXPECT_EQ(Inject(Text{"solo"}, spec), Text{"solo"});
  EXPECT_EQ(Inject(Text(), spec), Text());
}

TEST(AttackSpecTest, Validation) {
  AttackSpec spec;
  spec.kind = AttackKind::kBadWord;
  EXPECT_THROW(spec.Validate(), Error);
  spec.kind = AttackKind::kAddSent;
  EXPECT_THROW(spec.Validate(), Error);
  spec.kind = AttackKind::kReorder;
  EXPECT_NO_THROW(spec.Validate());
}

TEST(PoisonDatasetTest, ZeroRateIsIdentity) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 40});
  EXPECT_EQ(PoisonDataset(d, {PoisonMode::kMixed, 0.0, 1, 1}, BadWord(1)), d);
}

TEST(PoisonDatasetTest, MixedCountsAndCoupling) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 100});
  const PoisonSpec poison{PoisonMode::kMixed, 0.1, 1, 17};
  const LabeledDataset poisoned = PoisonDataset(d, poison, BadWord(3));
  const LabeledDataset certified = MakeCertifiedTrainingSet(d, poison);
  std::size_t changed_texts = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(poisoned.examples[i].label, certified.examples[i].label);
    if (!(poisoned.examples[i].text == d.examples[i].text)) {
      ++changed_texts;
      EXPECT_EQ(poisoned.examples[i].label, 1);
    }
    EXPECT_EQ(certified.examples[i].text, d.examples[i].text);
  }
  EXPECT_EQ(changed_texts, 10u);
}

TEST(PoisonDatasetTest, CleanModeKeepsLabels) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 100});
  const PoisonSpec poison{PoisonMode::kClean, 0.2, 2, 4};
  const LabeledDataset poisoned = PoisonDataset(d, poison, BadWord(2));
  std::size_t changed = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(poisoned.examples[i].label, d.examples[i].label);
    if (!(poisoned.examples[i].text == d.examples[i].text)) {
      ++changed;
      EXPECT_EQ(d.examples[i].label, 2);
    }
  }
  EXPECT_EQ(changed, 10u);  // floor(0.2 * 50 target-class examples)
}

TEST(PoisonDatasetTest, InfeasibleCleanAttack) {
  LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 10});
  for (auto& ex : d.examples) ex.label = 1;
  try {
    PoisonDataset(d, {PoisonMode::kClean, 0.5, 2, 0}, BadWord(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAttackInfeasible);
  }
}

TEST(PoisonDatasetTest, ParallelStyleSeedsAreOrderIndependent) {
  // Each example's trigger depends only on (seed, id), so poisoning a
  // shuffled copy poisons every example identically.
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 60});
  const PoisonSpec poison{PoisonMode::kMixed, 1.0, 1, 8};
  LabeledDataset reversed = d;
  std::reverse(reversed.examples.begin(), reversed.examples.end());
  const LabeledDataset a = PoisonDataset(d, poison, BadWord(5));
  const LabeledDataset b = PoisonDataset(reversed, poison, BadWord(5));
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(a.examples[i], b.examples[d.size() - 1 - i]);
  }
}

TEST(BackdooredTestSetTest, FiltersAndInjects) {
  const LabeledDataset test =
      testing::MakeSyntheticCorpus({.num_examples = 30, .num_classes = 3});
  const LabeledDataset backdoored = BuildBackdooredTestSet(test, BadWord(1), 2);
  EXPECT_EQ(backdoored.size(), 20u);
  for (const LabeledExample& ex : backdoored.examples) {
    EXPECT_NE(ex.label, 2);
    EXPECT_EQ(ex.label, test.examples[ex.id].label);
    EXPECT_EQ(ex.text.size(), test.examples[ex.id].text.size() + 1);
  }
}

TEST(BackdooredTestSetTest, AllTargetIsError) {
  LabeledDataset test = testing::MakeSyntheticCorpus({.num_examples = 6});
  for (auto& ex : test.examples) ex.label = 1;
  EXPECT_THROW(BuildBackdooredTestSet(test, BadWord(1), 1), Error);
}

TEST(AdaptiveTriggerTest, GroupsArePairwiseDistinct) {
  PartitionConfig cfg;
  cfg.num_groups = 7;
  const auto candidates = RareWordCandidates();
  const TriggerWordSet chosen = ChooseGroupDistinctTriggers(candidates, 3, cfg);
  ASSERT_EQ(chosen.size(), 3u);
  std::set<int> groups;
  for (const Token& w : chosen) groups.insert(HashGroup(w, cfg));
  EXPECT_EQ(groups.size(), 3u);
  EXPECT_THROW(ChooseGroupDistinctTriggers(candidates, 8, cfg), Error);
}

}  // namespace
}  // namespace hashvote
