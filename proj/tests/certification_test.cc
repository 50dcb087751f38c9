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

#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "support/adversary_oracle.h"
#include "support/synthetic_corpus.h"
#include "hashvote/certification.h"
#include "hashvote/error.h"

namespace hashvote {
namespace {

using ::testing::HasSubstr;

ExampleVotes FromCounts(std::vector<int> counts, int truth) {
  std::vector<int> labels;
  for (int c = 0; c < static_cast<int>(counts.size()); ++c) {
    labels.insert(labels.end(), counts[c], c + 1);
  }
  return MakeExampleVotes(0, truth,
                          TallyVotes(labels, static_cast<int>(counts.size())));
}

TEST(CertifiedSizeTest, Examples) {
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{5, 2}, 1).ToString(), "3/2");
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{4, 4}, 1).ToString(), "0/2");
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{4, 4}, 2).ToString(), "-1/2");
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{7, 0}, 1).ToString(), "7/2");
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{1, 3, 3}, 2).ToString(),
            "0/2");
  EXPECT_EQ(ComputeCertifiedSize(std::vector<int>{1, 4, 3}, 2).ToString(),
            "1/2");
  EXPECT_TRUE(CertifiedSize::FromTwice(3).Covers(1));
  EXPECT_FALSE(CertifiedSize::FromTwice(3).Covers(2));
  EXPECT_TRUE(CertifiedSize::FromTwice(0).Covers(0));
}

TEST(CertifiedSizeTest, ParseRoundTrip) {
  for (int twice : {-5, -1, 0, 1, 4, 9}) {
    const CertifiedSize s = CertifiedSize::FromTwice(twice);
    EXPECT_EQ(CertifiedSize::Parse(s.ToString()), s);
  }
  EXPECT_THROW(CertifiedSize::Parse("1.5"), Error);
}

TEST(MeaningfulTriggerLimitTest, Values) {
  EXPECT_EQ(MeaningfulTriggerLimit(1), 0);
  EXPECT_EQ(MeaningfulTriggerLimit(3), 1);
  EXPECT_EQ(MeaningfulTriggerLimit(7), 3);
  EXPECT_EQ(MeaningfulTriggerLimit(8), 3);
}

TEST(AccuracyTest, ExactComparison) {
  EXPECT_EQ((Accuracy{1, 3}), (Accuracy{2, 6}));
  EXPECT_LT((Accuracy{1, 3}), (Accuracy{34, 100}));
  EXPECT_GT((Accuracy{1, 3}), (Accuracy{33, 100}));
}

TEST(IndividualCaTest, SingleExample) {
  const std::vector<ExampleVotes> one = {FromCounts({5, 2}, 1)};
  EXPECT_EQ(IndividualCertifiedAccuracy(one, 7, 0).correct, 1u);
  EXPECT_EQ(IndividualCertifiedAccuracy(one, 7, 1).correct, 1u);
  EXPECT_EQ(IndividualCertifiedAccuracy(one, 7, 2).correct, 0u);
}

TEST(IndividualCaTest, CeilingAndWrongPredictions) {
  // m=4, unanimous for class 1: s = 2 but 2 > floor(3/2) so CA(2) is 0.
  const std::vector<ExampleVotes> unanimous = {FromCounts({4, 0}, 1)};
  EXPECT_EQ(IndividualCertifiedAccuracy(unanimous, 4, 1).correct, 1u);
  EXPECT_EQ(IndividualCertifiedAccuracy(unanimous, 4, 2).correct, 0u);
  const std::vector<ExampleVotes> wrong = {FromCounts({5, 2}, 2)};
  EXPECT_EQ(IndividualCertifiedAccuracy(wrong, 7, 0).correct, 0u);
  // A tie resolved for the truth counts at t = 0.
  const std::vector<ExampleVotes> tie = {FromCounts({3, 3}, 1)};
  EXPECT_EQ(IndividualCertifiedAccuracy(tie, 6, 0).correct, 1u);
}

std::vector<ExampleVotes> RandomVotes(std::mt19937_64& rng, int n, int m,
                                      int num_classes, double bias) {
  std::uniform_int_distribution<int> any(1, num_classes);
  std::bernoulli_distribution agree(bias);
  std::vector<ExampleVotes> out;
  for (int i = 0; i < n; ++i) {
    const int truth = any(rng);
    std::vector<int> labels(m);
    for (int& l : labels) l = agree(rng) ? truth : any(rng);
    out.push_back(MakeExampleVotes(i, truth, TallyVotes(labels, num_classes)));
  }
  return out;
}

std::vector<testing::OracleInput> ToOracle(
    const std::vector<ExampleVotes>& examples) {
  std::vector<testing::OracleInput> out;
  for (const ExampleVotes& ex : examples) {
    out.push_back({ex.truth, ex.votes.per_group_labels});
  }
  return out;
}

TEST(JointCaTest, ToyExampleMatchesOracle) {
  // m=3, two inputs with explicit per-group labels.
  std::vector<ExampleVotes> toy = {
      MakeExampleVotes(0, 1, TallyVotes(std::vector<int>{1, 1, 1}, 2)),
      MakeExampleVotes(1, 2, TallyVotes(std::vector<int>{2, 2, 1}, 2)),
  };
  EXPECT_EQ(JointCertifiedAccuracy(toy, 3, 1).correct, 1u);
  EXPECT_EQ(JointCertifiedAccuracy(toy, 3, 1).correct,
            testing::BruteForceJointCorrect(ToOracle(toy), 2, 1));
  EXPECT_EQ(JointCertifiedAccuracy(toy, 3, 0).correct, 2u);
}

// Corruption sets shared across inputs can do strictly better than the
// per-input worst case.
TEST(JointCaTest, SharedCorruptionSetBeatsIndividual) {
  std::vector<ExampleVotes> toy = {
      MakeExampleVotes(0, 1, TallyVotes(std::vector<int>{2, 1, 1}, 2)),
      MakeExampleVotes(1, 1, TallyVotes(std::vector<int>{1, 2, 1}, 2)),
      MakeExampleVotes(2, 1, TallyVotes(std::vector<int>{1, 1, 2}, 2)),
  };
  EXPECT_EQ(IndividualCertifiedAccuracy(toy, 3, 1).correct, 0u);
  EXPECT_EQ(JointCertifiedAccuracy(toy, 3, 1).correct, 1u);
}

TEST(JointCaTest, EqualsBruteForceOracle) {
  std::mt19937_64 rng(7);
  int instances = 0;
  for (int m = 1; m <= 7; ++m) {
    for (int num_classes = 2; num_classes <= 3; ++num_classes) {
      for (double bias : {0.4, 0.7, 0.9}) {
        const auto votes = RandomVotes(rng, 12, m, num_classes, bias);
        const auto oracle = ToOracle(votes);
        for (int t = 0; t <= std::min(3, m); ++t) {
          ASSERT_EQ(JointCertifiedAccuracy(votes, m, t, 1).correct,
                    testing::BruteForceJointCorrect(oracle, num_classes, t))
              << "m=" << m << " C=" << num_classes << " t=" << t;
          if (t <= MeaningfulTriggerLimit(m)) {
            ASSERT_EQ(IndividualCertifiedAccuracy(votes, m, t).correct,
                      testing::BruteForceIndividualCorrect(oracle, num_classes,
                                                           t));
          }
          ++instances;
        }
      }
    }
  }
  EXPECT_GT(instances, 100);
}

TEST(JointCaTest, MonotoneAndDominatesIndividual) {
  std::mt19937_64 rng(11);
  for (int m : {3, 5, 7, 9}) {
    const auto votes = RandomVotes(rng, 40, m, 3, 0.8);
    for (int t = 0; t < MeaningfulTriggerLimit(m); ++t) {
      EXPECT_GE(JointCertifiedAccuracy(votes, m, t),
                JointCertifiedAccuracy(votes, m, t + 1));
      EXPECT_GE(IndividualCertifiedAccuracy(votes, m, t),
                IndividualCertifiedAccuracy(votes, m, t + 1));
    }
    for (int t = 0; t <= MeaningfulTriggerLimit(m); ++t) {
      EXPECT_GE(JointCertifiedAccuracy(votes, m, t),
                IndividualCertifiedAccuracy(votes, m, t));
    }
  }
}

TEST(JointCaTest, WorkerCountDoesNotChangeResult) {
  std::mt19937_64 rng(3);
  const auto votes = RandomVotes(rng, 50, 9, 2, 0.8);
  for (int t = 0; t <= 4; ++t) {
    const Accuracy one = JointCertifiedAccuracy(votes, 9, t, 1);
    const Accuracy many = JointCertifiedAccuracy(votes, 9, t, 4);
    EXPECT_EQ(one.correct, many.correct);
    EXPECT_EQ(one.total, many.total);
  }
}

TEST(ForEachCombinationTest, LexicographicAndCounted) {
  std::vector<std::vector<int>> seen;
  ForEachCombination(4, 2, [&](std::span<const int> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  const std::vector<std::vector<int>> expected = {
      {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  EXPECT_EQ(seen, expected);
  int count = 0;
  ForEachCombination(5, 0, [&](std::span<const int> s) {
    EXPECT_TRUE(s.empty());
    ++count;
    return true;
  });
  EXPECT_EQ(count, 1);
}

TEST(VerifyCertificateTest, CertifiedExampleHolds) {
  const VoteVector v = TallyVotes(std::vector<int>{1, 1, 2, 1, 1, 2, 1}, 2);
  const CertificateCheck check = VerifyCertificate(v, 1);
  EXPECT_TRUE(check.holds);
  EXPECT_EQ(check.manipulations_checked, 1u + 7u * 2u);
  EXPECT_FALSE(check.counterexample.has_value());
}

TEST(VerifyCertificateTest, FindsCounterexample) {
  const VoteVector v = TallyVotes(std::vector<int>{1, 2, 1, 2, 1, 2, 1}, 2);
  const CertificateCheck check = VerifyCertificate(v, 1);
  ASSERT_FALSE(check.holds);
  ASSERT_TRUE(check.counterexample.has_value());
  std::vector<int> labels = v.per_group_labels;
  for (std::size_t k = 0; k < check.counterexample->groups.size(); ++k) {
    labels[check.counterexample->groups[k] - 1] = check.counterexample->labels[k];
  }
  EXPECT_NE(PluralityLabel(TallyVotes(labels, 2).counts), 1);
}

TEST(VerifyCertificateTest, ZeroIsTrivial) {
  const VoteVector v = TallyVotes(std::vector<int>{2, 1}, 2);
  EXPECT_TRUE(VerifyCertificate(v, 0).holds);
}

TEST(VerifyCertificateTest, HoldsWheneverCertified) {
  std::mt19937_64 rng(19);
  for (int m : {3, 5, 7}) {
    for (const ExampleVotes& ex : RandomVotes(rng, 60, m, 3, 0.8)) {
      for (int t = 0; 2 * t <= ex.size.twice(); ++t) {
        EXPECT_TRUE(VerifyCertificate(ex.votes, t).holds);
      }
    }
  }
}

TEST(VerifyCertificateTest, BudgetExceeded) {
  const VoteVector v = TallyVotes(std::vector<int>(25, 1), 4);
  try {
    VerifyCertificate(v, 6, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudget);
  }
}

TEST(DpaTest, BudgetAtHalfPartitionsCertifiesNothing) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 120});
  const LabeledDataset test = testing::MakeSyntheticCorpus(
      {.num_examples = 40, .seed = 2});
  const DpaEnsemble model = TrainDpaEnsemble(d, 9, LearnerSpec{});
  const auto votes = CollectDpaVotes(model, test);
  EXPECT_EQ(DpaCertifiedAccuracy(votes, 5).correct, 0u);
  std::size_t correct = 0;
  for (const auto& ex : votes) correct += ex.correct();
  EXPECT_EQ(DpaCertifiedAccuracy(votes, 0).correct, correct);
  EXPECT_GT(correct, 30u);
}

TEST(DpaTest, EmptyPartitionsFallBackToPrior) {
  LabeledDataset d = ParseDataset("#classes=2\n2\tx y\n2\ty z\n1\tz\n");
  const DpaEnsemble model = TrainDpaEnsemble(d, 25, LearnerSpec{});
  ASSERT_EQ(model.base_models.size(), 25u);
  int prior_votes = 0;
  for (const BaseModel& f : model.base_models) {
    prior_votes += f.Predict(Text{"unseen"}) == 2;
  }
  EXPECT_GE(prior_votes, 22);
}

TEST(ReportTest, CeilingRowsAndRecordFormat) {
  std::vector<ExampleVotes> votes = {FromCounts({3, 0}, 1),
                                     FromCounts({2, 1}, 2)};
  votes[1].id = 5;
  const std::vector<CertificationMethod> methods = {
      CertificationMethod::kIndividual, CertificationMethod::kJoint};
  const CertificationReport report =
      BuildCertificationReport(votes, 3, 3, methods, 1);
  for (auto method : methods) {
    EXPECT_EQ(report.Find(method, 0)->accuracy.correct, 1u);
    EXPECT_EQ(report.Find(method, 1)->accuracy.correct, 1u);
    EXPECT_EQ(report.Find(method, 2)->accuracy.correct, 0u);
    EXPECT_EQ(report.Find(method, 3)->accuracy.correct, 0u);
  }
  const std::string records = FormatReportRecords(report);
  EXPECT_THAT(records, HasSubstr("#m\t3\n"));
  EXPECT_THAT(records, HasSubstr("0\t1\t1\t3,0\t3/2\n"));
  EXPECT_THAT(records, HasSubstr("5\t1\t2\t2,1\t1/2\n"));
  EXPECT_THAT(records, HasSubstr("#ca\tjoint\t1\t0.500000\t1/2\n"));
  EXPECT_THAT(FormatReportTable(report), HasSubstr("joint"));
}

}  // namespace
}  // namespace hashvote
