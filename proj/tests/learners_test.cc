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
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "support/synthetic_corpus.h"
#include "hashvote/error.h"
#include "hashvote/learners.h"

namespace hashvote {
namespace {

LabeledDataset TinyCorpus() {
  return ParseDataset(
      "#classes=2\n1\tgood good fun\n1\tfun\n2\tbad\n2\tbad boring\n");
}

LearnerSpec Linear() {
  LearnerSpec spec;
  spec.kind = LearnerKind::kLinear;
  spec.feature_dim = 256;
  spec.epochs = 100;
  return spec;
}

TEST(NaiveBayesTest, ClosedFormOracle) {
  // Vocabulary {good, fun, bad, boring}; class 1 has 4 tokens, class 2 has 3.
  const BaseModel model = Train({}, TinyCorpus());
  const auto scores = model.FeatureVector(Text{"good", "bad", "unseen"});
  const double s1 = std::log(0.5) + std::log(3.0 / 8) + std::log(1.0 / 8);
  const double s2 = std::log(0.5) + std::log(1.0 / 7) + std::log(3.0 / 7);
  EXPECT_NEAR(scores[0], s1, 1e-12);
  EXPECT_NEAR(scores[1], s2, 1e-12);
  EXPECT_EQ(model.Predict(Text{"good", "bad", "unseen"}), 2);
  EXPECT_EQ(model.Predict(Text{"good"}), 1);
}

TEST(NaiveBayesTest, LargeSmoothingReducesToPrior) {
  LabeledDataset d = TinyCorpus();
  d.examples.push_back({Text{"bad"}, 2, 4});
  LearnerSpec spec;
  spec.smoothing = 1e12;
  const BaseModel model = Train(spec, d);
  EXPECT_EQ(model.Predict(Text{"good", "good", "good", "fun"}), 2);
}

TEST(NaiveBayesTest, EmptyTextPredictsPrior) {
  LabeledDataset d = TinyCorpus();
  d.examples.push_back({Text{"good"}, 1, 4});
  EXPECT_EQ(Train({}, d).Predict(Text()), 1);
  EXPECT_EQ(Train({}, TinyCorpus()).Predict(Text()), 1);  // tie -> smaller
}

TEST(NaiveBayesTest, ExampleOrderInvariance) {
  const LabeledDataset d =
      testing::MakeSyntheticCorpus({.num_examples = 80, .num_classes = 3});
  LabeledDataset shuffled = d;
  std::mt19937_64 rng(4);
  std::shuffle(shuffled.examples.begin(), shuffled.examples.end(), rng);
  const BaseModel a = Train({}, d);
  const BaseModel b = Train({}, shuffled);
  const LabeledDataset probe = testing::MakeSyntheticCorpus(
      {.num_examples = 30, .num_classes = 3, .seed = 99});
  for (const auto& ex : probe.examples) {
    const auto fa = a.FeatureVector(ex.text);
    const auto fb = b.FeatureVector(ex.text);
    for (std::size_t c = 0; c < fa.size(); ++c) EXPECT_NEAR(fa[c], fb[c], 1e-9);
  }
}

TEST(LearnerTest, SingleClassTrainingIsDegenerate) {
  const LabeledDataset d = ParseDataset("#classes=3\n2\tonly this\n2\tclass\n");
  for (const LearnerSpec& spec : {LearnerSpec{}, Linear()}) {
    const BaseModel model = Train(spec, d);
    for (const Text& x : {Text(), Text{"anything"}, Text{"only", "class"}}) {
      EXPECT_EQ(model.Predict(x), 2);
      for (double s : model.FeatureVector(x)) EXPECT_TRUE(std::isfinite(s));
    }
  }
}

TEST(LearnerTest, EmptyTrainingSetIsError) {
  LabeledDataset d;
  d.num_classes = 2;
  EXPECT_THROW(Train({}, d), Error);
}

TEST(LearnerTest, FeatureVectorsAreFinite) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 60});
  for (const LearnerSpec& spec : {LearnerSpec{}, Linear()}) {
    const BaseModel model = Train(spec, d);
    for (const auto& ex : d.examples) {
      for (double s : model.FeatureVector(ex.text)) {
        EXPECT_TRUE(std::isfinite(s));
      }
    }
  }
}

TEST(LearnerTest, TrainingIsDeterministic) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 60});
  EXPECT_EQ(Train(Linear(), d), Train(Linear(), d));
  EXPECT_EQ(Train({}, d).Serialize(), Train({}, d).Serialize());
}

TEST(LearnerTest, LearnsSeparableCorpus) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 100});
  for (const LearnerSpec& spec : {LearnerSpec{}, Linear()}) {
    const BaseModel model = Train(spec, d);
    int correct = 0;
    for (const auto& ex : d.examples) correct += model.Predict(ex.text) == ex.label;
    EXPECT_GE(correct, 95);
  }
}

TEST(LearnerTest, SerializeRoundTrip) {
  const LabeledDataset d = testing::MakeSyntheticCorpus({.num_examples = 40});
  for (const LearnerSpec& spec : {LearnerSpec{}, Linear()}) {
    const BaseModel model = Train(spec, d);
    const std::string bytes = model.Serialize();
    EXPECT_EQ(bytes.substr(0, 8), std::string("HVMODEL\0", 8));
    const BaseModel back = BaseModel::Deserialize(bytes);
    EXPECT_EQ(back, model);
    for (const auto& ex : d.examples) {
      EXPECT_EQ(back.FeatureVector(ex.text), model.FeatureVector(ex.text));
    }
  }
}

TEST(LearnerTest, DeserializeRejectsGarbage) {
  EXPECT_THROW(BaseModel::Deserialize("nope"), Error);
  std::string bytes = Train({}, TinyCorpus()).Serialize();
  bytes.pop_back();
  EXPECT_THROW(BaseModel::Deserialize(bytes), Error);
}

TEST(ArgmaxTest, SmallerIndexWinsTies) {
  EXPECT_EQ(ArgmaxLabel(std::vector<double>{1.0, 3.0, 3.0}), 2);
  EXPECT_EQ(ArgmaxLabel(std::vector<double>{kAbsentClassScore, -5.0}), 2);
}

// Central finite differences against the analytic gradient on random
// problems: relative error at most 1e-4 with a 1e-6 floor on the scale.
TEST(LinearObjectiveTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> small(2, 4);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    LinearProblem problem;
    problem.num_classes = small(rng);
    problem.feature_dim = small(rng) + 3;
    problem.l2 = 0.01 * (instance % 3);
    const int n = small(rng) + 2;
    std::uniform_int_distribution<int> label(1, problem.num_classes);
    std::uniform_int_distribution<int> index(0, problem.feature_dim - 1);
    problem.present.assign(problem.num_classes, 1.0);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<int, double>> f;
      for (int k = 0; k < 3; ++k) f.emplace_back(index(rng), normal(rng));
      problem.features.push_back(f);
      problem.labels.push_back(label(rng));
    }
    std::vector<double> params(problem.parameter_count());
    for (double& p : params) p = normal(rng);
    std::vector<double> grad(params.size());
    LinearObjective(problem, params, grad);
    const double h = 1e-6;
    for (std::size_t k = 0; k < params.size(); ++k) {
      std::vector<double> plus = params, minus = params;
      plus[k] += h;
      minus[k] -= h;
      const double numeric = (LinearObjective(problem, plus, {}) -
                              LinearObjective(problem, minus, {})) /
                             (2 * h);
      const double scale =
          std::max({std::abs(numeric), std::abs(grad[k]), 1e-6});
      const double rel = std::abs(numeric - grad[k]) / scale;
      worst = std::max(worst, rel);
      ASSERT_LE(rel, 1e-4) << "instance " << instance << " param " << k;
    }
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(HashedFeaturesTest, CountsCollide) {
  const auto f = HashedFeatures(Text{"a", "a", "b"}, 1, HashAlgorithm::kMd5);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], (std::pair<int, double>{0, 3.0}));
}

}  // namespace
}  // namespace hashvote
