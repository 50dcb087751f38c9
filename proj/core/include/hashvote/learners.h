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

#ifndef HASHVOTE_LEARNERS_H_
#define HASHVOTE_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hashvote/corpus.h"
#include "hashvote/digest.h"
#include "hashvote/text.h"

namespace hashvote {

enum class LearnerKind { kNaiveBayes, kLinear };

const char* LearnerKindName(LearnerKind kind);
LearnerKind ParseLearnerKind(std::string_view name);

struct LearnerSpec {
  LearnerKind kind = LearnerKind::kNaiveBayes;
  // naive_bayes
  double smoothing = 1.0;
  // linear
  double learning_rate = 0.5;
  int epochs = 200;
  int feature_dim = 4096;
  double l2 = 1e-4;
  HashAlgorithm feature_hash = HashAlgorithm::kMd5;

  std::uint64_t seed = 0;

  void Validate() const;
};

// Score assigned to classes that had no training example. Finite, and below
// any score a present class can reach, so such classes are never predicted.
inline constexpr double kAbsentClassScore = -1e300;

// Multinomial naive Bayes. Tokens never seen in training are ignored.
struct NaiveBayesParameters {
  std::vector<double> log_prior;  // per class; -inf for absent classes
  std::map<std::string, std::vector<double>, std::less<>> log_likelihood;

  friend bool operator==(const NaiveBayesParameters&,
                         const NaiveBayesParameters&) = default;
};

// Softmax regression over hashed bag-of-token counts.
struct LinearParameters {
  int feature_dim = 0;
  HashAlgorithm feature_hash = HashAlgorithm::kMd5;
  std::vector<double> weights;  // row-major, num_classes x feature_dim
  std::vector<double> bias;     // per class
  std::vector<double> present;  // 1.0 if the class had training examples

  friend bool operator==(const LinearParameters&,
                         const LinearParameters&) = default;
};

// A trained base classifier f^j. Immutable; prediction is a pure function
// of the parameters and the input.
class BaseModel {
 public:
  using Parameters = std::variant<NaiveBayesParameters, LinearParameters>;

  BaseModel(int num_classes, Parameters parameters);

  // Naive Bayes model with no vocabulary: predicts the majority class of
  // `class_counts` (smaller index on ties) for every input.
  static BaseModel PriorOnly(std::span<const std::size_t> class_counts);

  LearnerKind kind() const;
  int num_classes() const { return num_classes_; }
  const Parameters& parameters() const { return parameters_; }

  // Pre-argmax class scores, one per class. Always finite.
  std::vector<double> FeatureVector(const Text& x) const;

  // Argmax of FeatureVector; ties go to the smaller class index.
  int Predict(const Text& x) const;

  // Versioned binary container: magic, format version, learner kind, C and
  // the parameter arrays as little-endian IEEE-754 doubles.
  std::string Serialize() const;
  static BaseModel Deserialize(std::string_view bytes);

  friend bool operator==(const BaseModel&, const BaseModel&) = default;

 private:
  int num_classes_;
  Parameters parameters_;
};

// Trains a base classifier. Throws Error(kTraining) on an empty dataset. A
// dataset with a single class yields a model that always predicts it.
BaseModel Train(const LearnerSpec& spec, const LabeledDataset& data);

// 1-based label with the largest score; smaller index wins ties.
int ArgmaxLabel(std::span<const double> scores);

// Hashed count features of x: (bucket, count) pairs sorted by bucket.
std::vector<std::pair<int, double>> HashedFeatures(const Text& x,
                                                   int feature_dim,
                                                   HashAlgorithm hash);

// The linear learner's training objective, exposed for gradient checks.
struct LinearProblem {
  int num_classes = 2;
  int feature_dim = 1;
  double l2 = 0.0;
  std::vector<std::vector<std::pair<int, double>>> features;
  std::vector<int> labels;  // 1-based
  std::vector<double> present;

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(num_classes) * (feature_dim + 1);
  }
};

LinearProblem MakeLinearProblem(const LabeledDataset& data,
                                const LearnerSpec& spec);

// Mean cross-entropy plus (l2 / 2) * ||W||^2. params holds the weights
// (row-major) followed by the biases. If gradient is non-empty it receives
// d(objective)/d(params).
double LinearObjective(const LinearProblem& problem,
                       std::span<const double> params,
                       std::span<double> gradient);

}  // namespace hashvote

#endif  // HASHVOTE_LEARNERS_H_
