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

#ifndef HASHVOTE_CERTIFICATION_H_
#define HASHVOTE_CERTIFICATION_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashvote/corpus.h"
#include "hashvote/ensemble.h"
#include "hashvote/learners.h"

namespace hashvote {

// A half-integer, stored as its doubled value so comparisons are exact.
class CertifiedSize {
 public:
  constexpr CertifiedSize() = default;
  static constexpr CertifiedSize FromTwice(std::int64_t twice) {
    CertifiedSize s;
    s.twice_ = twice;
    return s;
  }

  constexpr std::int64_t twice() const { return twice_; }
  // True iff the prediction is guaranteed for trigger size t, i.e. t <= s.
  constexpr bool Covers(std::int64_t t) const { return twice_ >= 2 * t; }

  // Rendered as "<numerator>/2", e.g. "3/2" or "-1/2".
  std::string ToString() const;
  static CertifiedSize Parse(std::string_view text);

  friend constexpr auto operator<=>(const CertifiedSize&,
                                    const CertifiedSize&) = default;

 private:
  std::int64_t twice_ = 0;
};

// (M_y - max_{c != y}(M_c + [y > c])) / 2 for 1-based label y.
CertifiedSize ComputeCertifiedSize(std::span<const int> counts, int y);

// Largest trigger size for which a certificate is reported: floor((m-1)/2).
constexpr int MeaningfulTriggerLimit(int num_groups) {
  return num_groups >= 1 ? (num_groups - 1) / 2 : 0;
}

// An exact fraction of a test set.
struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / total;
  }
  friend bool operator==(const Accuracy& a, const Accuracy& b) {
    return a.correct * b.total == b.correct * a.total;
  }
  friend std::strong_ordering operator<=>(const Accuracy& a,
                                          const Accuracy& b) {
    return a.correct * b.total <=> b.correct * a.total;
  }
};

// Everything certification needs about one test input.
struct ExampleVotes {
  std::uint64_t id = 0;
  int truth = 1;
  int prediction = 1;
  VoteVector votes;
  CertifiedSize size;

  bool correct() const { return prediction == truth; }
};

ExampleVotes MakeExampleVotes(std::uint64_t id, int truth, VoteVector votes);

std::vector<ExampleVotes> CollectVotes(const EnsembleModel& model,
                                       const LabeledDataset& testset,
                                       unsigned workers = 0);

// Fraction of inputs predicted correctly with s(x) >= t. Zero whenever
// t > floor((m-1)/2).
Accuracy IndividualCertifiedAccuracy(std::span<const ExampleVotes> examples,
                                     int num_groups, int t);
Accuracy IndividualCertifiedAccuracy(const EnsembleModel& model,
                                     const LabeledDataset& testset, int t);

// Joint certification: the minimum over every corruption set Γ of size t of
// the fraction of inputs that stay correct when the groups in Γ are
// adversarial. No ceiling is applied here; callers that report tables apply
// MeaningfulTriggerLimit. Γ is enumerated in lexicographic order across up
// to `workers` threads with a min-reduction.
Accuracy JointCertifiedAccuracy(std::span<const ExampleVotes> examples,
                                int num_groups, int t, unsigned workers = 0);
Accuracy JointCertifiedAccuracy(const EnsembleModel& model,
                                const LabeledDataset& testset, int t,
                                unsigned workers = 0);

// True iff the input stays correct for corruption set `corrupted` (1-based
// group indices), per the joint lower/upper vote bounds.
bool SurvivesCorruption(const ExampleVotes& example,
                        std::span<const int> corrupted);

// Calls visit(indices) for every size-t subset of {1..m} in lexicographic
// order; stops early if visit returns false.
template <typename Visit>
void ForEachCombination(int m, int t, Visit&& visit);

inline constexpr std::uint64_t kDefaultVerificationBudget = 50'000'000;

struct Manipulation {
  std::vector<int> groups;  // corrupted group indices
  std::vector<int> labels;  // label each corrupted group now emits
};

struct CertificateCheck {
  bool holds = true;
  std::uint64_t manipulations_checked = 0;
  std::optional<Manipulation> counterexample;
};

// Exhaustively tries every set of at most t corrupted groups and every
// relabelling of them; holds iff the majority label never changes. Throws
// Error(kBudget) if the number of manipulations exceeds `budget`.
CertificateCheck VerifyCertificate(const VoteVector& votes, int t,
                            std::uint64_t budget = kDefaultVerificationBudget);
CertificateCheck VerifyCertificate(const EnsembleModel& model, const Text& x, int t,
                            std::uint64_t budget = kDefaultVerificationBudget);

// Sample-partition baseline: examples (not words) are hashed into
// partitions, one model per partition, votes cast on the raw text.
struct DpaEnsemble {
  HashAlgorithm hash = HashAlgorithm::kMd5;
  int num_classes = 2;
  std::vector<BaseModel> base_models;
};

// Partition of an example: DigestPrefix64(hash, joined text) % P + 1. An
// empty partition gets BaseModel::PriorOnly over the whole dataset.
DpaEnsemble TrainDpaEnsemble(const LabeledDataset& dataset, int num_partitions,
                             const LearnerSpec& learner,
                             HashAlgorithm hash = HashAlgorithm::kMd5,
                             unsigned workers = 0);
std::vector<ExampleVotes> CollectDpaVotes(const DpaEnsemble& model,
                                          const LabeledDataset& testset,
                                          unsigned workers = 0);
// Fraction correct whose tolerated poisoned-example count covers `budget`.
Accuracy DpaCertifiedAccuracy(std::span<const ExampleVotes> examples,
                              int budget);
Accuracy DpaBaselineCertify(const LabeledDataset& dataset,
                            const LabeledDataset& testset, int num_partitions,
                            int budget, const LearnerSpec& learner,
                            unsigned workers = 0);

enum class CertificationMethod { kIndividual, kJoint, kDpaBaseline };
const char* CertificationMethodName(CertificationMethod method);
CertificationMethod ParseCertificationMethod(std::string_view name);

struct CaEntry {
  CertificationMethod method;
  int t;  // trigger size, or poisoned-example budget for the DPA baseline
  Accuracy accuracy;
};

struct CertificationReport {
  int num_groups = 1;
  std::vector<ExampleVotes> examples;
  std::vector<CaEntry> table;

  // Non-null if (method, t) was computed.
  const CaEntry* Find(CertificationMethod method, int t) const;
};

// CA(t) for t = 0..max_t for each word-partition method, with the
// floor((m-1)/2) ceiling applied.
CertificationReport BuildCertificationReport(
    std::vector<ExampleVotes> examples, int num_groups, int max_t,
    std::span<const CertificationMethod> methods, unsigned workers = 0);

// Aligned human-readable table.
std::string FormatReportTable(const CertificationReport& report);
// One tab-separated record per example (id, y, truth, counts, s) followed
// by "#ca" footer lines (method, t, value, correct/total).
std::string FormatReportRecords(const CertificationReport& report);

template <typename Visit>
void ForEachCombination(int m, int t, Visit&& visit) {
  if (t < 0 || t > m) return;
  std::vector<int> indices(t);
  for (int i = 0; i < t; ++i) indices[i] = i + 1;
  while (true) {
    if (!visit(std::span<const int>(indices))) return;
    int i = t - 1;
    while (i >= 0 && indices[i] == m - t + i + 1) --i;
    if (i < 0) return;
    ++indices[i];
    for (int k = i + 1; k < t; ++k) indices[k] = indices[k - 1] + 1;
  }
}

}  // namespace hashvote

#endif  // HASHVOTE_CERTIFICATION_H_
