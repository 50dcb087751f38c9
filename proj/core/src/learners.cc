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

#include "hashvote/learners.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <random>

#include "hashvote/error.h"

namespace hashvote {
namespace {

constexpr std::string_view kModelMagic{"HVMODEL\0", 8};
constexpr std::uint32_t kModelFormatVersion = 1;

class ByteWriter {
 public:
  void Bytes(std::string_view b) { out_.append(b); }
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) { Little(v, 4); }
  void U64(std::uint64_t v) { Little(v, 8); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void F64s(const std::vector<double>& values) {
    for (double v : values) F64(v);
  }
  std::string Take() { return std::move(out_); }

 private:
  void Little(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view in) : in_(in) {}

  std::string_view Bytes(std::size_t n) {
    Need(n);
    std::string_view b = in_.substr(0, n);
    in_.remove_prefix(n);
    return b;
  }
  std::uint8_t U8() { return static_cast<std::uint8_t>(Bytes(1)[0]); }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Little(4)); }
  std::uint64_t U64() { return Little(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  std::vector<double> F64s(std::size_t n) {
    std::vector<double> values(n);
    for (double& v : values) v = F64();
    return values;
  }
  bool done() const { return in_.empty(); }

 private:
  void Need(std::size_t n) const {
    if (in_.size() < n) {
      throw Error(ErrorCode::kParse, "model file is truncated");
    }
  }
  std::uint64_t Little(int width) {
    std::string_view b = Bytes(width);
    std::uint64_t v = 0;
    for (int i = width - 1; i >= 0; --i) {
      v = (v << 8) | static_cast<std::uint8_t>(b[i]);
    }
    return v;
  }
  std::string_view in_;
};

// Counts normalized to unit l2 norm.
std::vector<std::pair<int, double>> NormalizedFeatures(const Text& x,
                                                       int feature_dim,
                                                       HashAlgorithm hash) {
  auto features = HashedFeatures(x, feature_dim, hash);
  double norm = 0.0;
  for (const auto& [index, value] : features) norm += value * value;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& [index, value] : features) value /= norm;
  }
  return features;
}

BaseModel TrainNaiveBayes(const LearnerSpec& spec, const LabeledDataset& data) {
  const int num_classes = data.num_classes;
  std::vector<double> doc_count(num_classes, 0.0);
  std::vector<double> token_total(num_classes, 0.0);
  std::map<std::string, std::vector<double>, std::less<>> counts;
  for (const LabeledExample& ex : data.examples) {
    const int c = ex.label - 1;
    doc_count[c] += 1.0;
    for (const Token& t : ex.text) {
      auto [it, inserted] = counts.try_emplace(t.surface());
      if (inserted) it->second.assign(num_classes, 0.0);
      it->second[c] += 1.0;
      token_total[c] += 1.0;
    }
  }
  NaiveBayesParameters params;
  const double n = static_cast<double>(data.size());
  params.log_prior.resize(num_classes);
  for (int c = 0; c < num_classes; ++c) {
    params.log_prior[c] = doc_count[c] > 0.0
                              ? std::log(doc_count[c] / n)
                              : -std::numeric_limits<double>::infinity();
  }
  const double vocab = static_cast<double>(counts.size());
  const double alpha = spec.smoothing;
  for (auto& [word, per_class] : counts) {
    std::vector<double> log_likelihood(num_classes);
    for (int c = 0; c < num_classes; ++c) {
      log_likelihood[c] =
          std::log((per_class[c] + alpha) / (token_total[c] + alpha * vocab));
    }
    params.log_likelihood.emplace(word, std::move(log_likelihood));
  }
  return BaseModel(num_classes, std::move(params));
}

BaseModel TrainLinear(const LearnerSpec& spec, const LabeledDataset& data) {
  const LinearProblem problem = MakeLinearProblem(data, spec);
  const std::size_t weight_count =
      static_cast<std::size_t>(problem.num_classes) * problem.feature_dim;
  std::vector<double> params(problem.parameter_count(), 0.0);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> init(0.0, 0.01);
  for (std::size_t i = 0; i < weight_count; ++i) params[i] = init(rng);

  std::vector<double> gradient(params.size());
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    LinearObjective(problem, params, gradient);
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] -= spec.learning_rate * gradient[i];
    }
  }

  LinearParameters out;
  out.feature_dim = problem.feature_dim;
  out.feature_hash = spec.feature_hash;
  out.weights.assign(params.begin(), params.begin() + weight_count);
  out.bias.assign(params.begin() + weight_count, params.end());
  out.present = problem.present;
  return BaseModel(problem.num_classes, std::move(out));
}

}  // namespace

const char* LearnerKindName(LearnerKind kind) {
  return kind == LearnerKind::kNaiveBayes ? "naive_bayes" : "linear";
}

LearnerKind ParseLearnerKind(std::string_view name) {
  if (name == "naive_bayes" || name == "nb") return LearnerKind::kNaiveBayes;
  if (name == "linear") return LearnerKind::kLinear;
  throw Error(ErrorCode::kConfig,
              "unknown learner '" + std::string(name) + "'");
}

void LearnerSpec::Validate() const {
  if (!(smoothing > 0.0)) {
    throw Error(ErrorCode::kConfig, "smoothing must be > 0");
  }
  if (epochs < 1) throw Error(ErrorCode::kConfig, "epochs must be >= 1");
  if (feature_dim < 1) {
    throw Error(ErrorCode::kConfig, "feature dimension must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw Error(ErrorCode::kConfig, "learning rate must be > 0");
  }
  if (!(l2 >= 0.0)) throw Error(ErrorCode::kConfig, "l2 must be >= 0");
  if (feature_hash == HashAlgorithm::kMock) {
    throw Error(ErrorCode::kConfig, "feature hashing cannot use the mock hash");
  }
}

BaseModel::BaseModel(int num_classes, Parameters parameters)
    : num_classes_(num_classes), parameters_(std::move(parameters)) {}

BaseModel BaseModel::PriorOnly(std::span<const std::size_t> class_counts) {
  NaiveBayesParameters params;
  std::size_t total = 0;
  for (std::size_t n : class_counts) total += n;
  for (std::size_t n : class_counts) {
    params.log_prior.push_back(
        n > 0 ? std::log(static_cast<double>(n) / static_cast<double>(total))
              : -std::numeric_limits<double>::infinity());
  }
  return BaseModel(static_cast<int>(class_counts.size()), std::move(params));
}

LearnerKind BaseModel::kind() const {
  return std::holds_alternative<NaiveBayesParameters>(parameters_)
             ? LearnerKind::kNaiveBayes
             : LearnerKind::kLinear;
}

std::vector<double> BaseModel::FeatureVector(const Text& x) const {
  std::vector<double> scores(num_classes_);
  if (const auto* nb = std::get_if<NaiveBayesParameters>(&parameters_)) {
    for (int c = 0; c < num_classes_; ++c) scores[c] = nb->log_prior[c];
    for (const Token& t : x) {
      auto it = nb->log_likelihood.find(t.surface());
      if (it == nb->log_likelihood.end()) continue;
      for (int c = 0; c < num_classes_; ++c) scores[c] += it->second[c];
    }
    for (int c = 0; c < num_classes_; ++c) {
      if (std::isinf(nb->log_prior[c])) scores[c] = kAbsentClassScore;
    }
    return scores;
  }
  const auto& lin = std::get<LinearParameters>(parameters_);
  const auto features =
      NormalizedFeatures(x, lin.feature_dim, lin.feature_hash);
  for (int c = 0; c < num_classes_; ++c) {
    if (lin.present[c] == 0.0) {
      scores[c] = kAbsentClassScore;
      continue;
    }
    double z = lin.bias[c];
    const double* row =
        lin.weights.data() + static_cast<std::size_t>(c) * lin.feature_dim;
    for (const auto& [index, value] : features) z += row[index] * value;
    scores[c] = z;
  }
  return scores;
}

int BaseModel::Predict(const Text& x) const {
  return ArgmaxLabel(FeatureVector(x));
}

std::string BaseModel::Serialize() const {
  ByteWriter w;
  w.Bytes(kModelMagic);
  w.U32(kModelFormatVersion);
  w.U8(static_cast<std::uint8_t>(kind()));
  w.U32(static_cast<std::uint32_t>(num_classes_));
  if (const auto* nb = std::get_if<NaiveBayesParameters>(&parameters_)) {
    w.F64s(nb->log_prior);
    w.U64(nb->log_likelihood.size());
    for (const auto& [word, values] : nb->log_likelihood) {
      w.U32(static_cast<std::uint32_t>(word.size()));
      w.Bytes(word);
      w.F64s(values);
    }
  } else {
    const auto& lin = std::get<LinearParameters>(parameters_);
    w.U8(static_cast<std::uint8_t>(lin.feature_hash));
    w.U32(static_cast<std::uint32_t>(lin.feature_dim));
    w.F64s(lin.weights);
    w.F64s(lin.bias);
    w.F64s(lin.present);
  }
  return w.Take();
}

BaseModel BaseModel::Deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.Bytes(kModelMagic.size()) != kModelMagic) {
    throw Error(ErrorCode::kParse, "not a hashvote model file");
  }
  if (const std::uint32_t version = r.U32(); version != kModelFormatVersion) {
    throw Error(ErrorCode::kParse,
                "unsupported model format version " + std::to_string(version));
  }
  const std::uint8_t kind = r.U8();
  const int num_classes = static_cast<int>(r.U32());
  if (num_classes < 1) throw Error(ErrorCode::kParse, "bad class count");
  std::optional<BaseModel> model;
  if (kind == static_cast<std::uint8_t>(LearnerKind::kNaiveBayes)) {
    NaiveBayesParameters nb;
    nb.log_prior = r.F64s(num_classes);
    const std::uint64_t vocab = r.U64();
    for (std::uint64_t i = 0; i < vocab; ++i) {
      std::string word(r.Bytes(r.U32()));
      nb.log_likelihood.emplace(std::move(word), r.F64s(num_classes));
    }
    model.emplace(num_classes, std::move(nb));
  } else if (kind == static_cast<std::uint8_t>(LearnerKind::kLinear)) {
    LinearParameters lin;
    const std::uint8_t hash = r.U8();
    if (hash > static_cast<std::uint8_t>(HashAlgorithm::kSha256)) {
      throw Error(ErrorCode::kParse, "bad feature hash id");
    }
    lin.feature_hash = static_cast<HashAlgorithm>(hash);
    lin.feature_dim = static_cast<int>(r.U32());
    if (lin.feature_dim < 1) throw Error(ErrorCode::kParse, "bad dimension");
    lin.weights =
        r.F64s(static_cast<std::size_t>(num_classes) * lin.feature_dim);
    lin.bias = r.F64s(num_classes);
    lin.present = r.F64s(num_classes);
    model.emplace(num_classes, std::move(lin));
  } else {
    throw Error(ErrorCode::kParse, "unknown learner kind in model file");
  }
  if (!r.done()) throw Error(ErrorCode::kParse, "trailing bytes in model file");
  return std::move(*model);
}

BaseModel Train(const LearnerSpec& spec, const LabeledDataset& data) {
  spec.Validate();
  if (data.empty()) {
    throw Error(ErrorCode::kTraining, "cannot train on an empty dataset");
  }
  data.Validate();
  return spec.kind == LearnerKind::kNaiveBayes ? TrainNaiveBayes(spec, data)
                                               : TrainLinear(spec, data);
}

int ArgmaxLabel(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<int>(best) + 1;
}

std::vector<std::pair<int, double>> HashedFeatures(const Text& x,
                                                   int feature_dim,
                                                   HashAlgorithm hash) {
  std::map<int, double> buckets;
  for (const Token& t : x) {
    const auto index = static_cast<int>(DigestPrefix64(hash, t.surface()) %
                                        static_cast<std::uint64_t>(feature_dim));
    buckets[index] += 1.0;
  }
  return {buckets.begin(), buckets.end()};
}

LinearProblem MakeLinearProblem(const LabeledDataset& data,
                                const LearnerSpec& spec) {
  LinearProblem problem;
  problem.num_classes = data.num_classes;
  problem.feature_dim = spec.feature_dim;
  problem.l2 = spec.l2;
  problem.present.assign(data.num_classes, 0.0);
  problem.features.reserve(data.size());
  problem.labels.reserve(data.size());
  for (const LabeledExample& ex : data.examples) {
    problem.features.push_back(
        NormalizedFeatures(ex.text, spec.feature_dim, spec.feature_hash));
    problem.labels.push_back(ex.label);
    problem.present[ex.label - 1] = 1.0;
  }
  return problem;
}

double LinearObjective(const LinearProblem& problem,
                       std::span<const double> params,
                       std::span<double> gradient) {
  const int num_classes = problem.num_classes;
  const std::size_t dim = static_cast<std::size_t>(problem.feature_dim);
  const std::size_t weight_count = num_classes * dim;
  const double* weights = params.data();
  const double* bias = params.data() + weight_count;
  const bool want_gradient = !gradient.empty();
  if (want_gradient) std::fill(gradient.begin(), gradient.end(), 0.0);

  const double inv_n =
      problem.labels.empty() ? 0.0 : 1.0 / static_cast<double>(problem.labels.size());
  std::vector<double> z(num_classes);
  double loss = 0.0;
  for (std::size_t i = 0; i < problem.labels.size(); ++i) {
    const auto& features = problem.features[i];
    double zmax = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < num_classes; ++c) {
      if (problem.present[c] == 0.0) continue;
      double s = bias[c];
      const double* row = weights + c * dim;
      for (const auto& [index, value] : features) s += row[index] * value;
      z[c] = s;
      zmax = std::max(zmax, s);
    }
    double partition = 0.0;
    for (int c = 0; c < num_classes; ++c) {
      if (problem.present[c] != 0.0) partition += std::exp(z[c] - zmax);
    }
    const double log_partition = zmax + std::log(partition);
    const int y = problem.labels[i] - 1;
    loss += (log_partition - z[y]) * inv_n;
    if (!want_gradient) continue;
    for (int c = 0; c < num_classes; ++c) {
      if (problem.present[c] == 0.0) continue;
      const double residual =
          (std::exp(z[c] - log_partition) - (c == y ? 1.0 : 0.0)) * inv_n;
      double* row = gradient.data() + c * dim;
      for (const auto& [index, value] : features) row[index] += residual * value;
      gradient[weight_count + c] += residual;
    }
  }
  if (problem.l2 > 0.0) {
    double penalty = 0.0;
    for (std::size_t k = 0; k < weight_count; ++k) {
      penalty += weights[k] * weights[k];
      if (want_gradient) gradient[k] += problem.l2 * weights[k];
    }
    loss += 0.5 * problem.l2 * penalty;
  }
  return loss;
}

}  // namespace hashvote
