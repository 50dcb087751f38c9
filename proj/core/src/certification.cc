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

#include "hashvote/certification.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "hashvote/digest.h"
#include "hashvote/error.h"
#include "hashvote/parallel.h"

namespace hashvote {
namespace {

constexpr std::size_t kJointBatchSize = 4096;

// Saturating arithmetic for manipulation counts.
std::uint64_t SatMul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t SatAdd(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::uint64_t Binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    const std::uint64_t next = SatMul(r, static_cast<std::uint64_t>(n - k + i));
    if (next == std::numeric_limits<std::uint64_t>::max()) return next;
    r = next / i;
  }
  return r;
}

std::string FormatFixed(double value, int precision) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", precision, value);
  return buffer;
}

std::string JoinCounts(const std::vector<int>& counts) {
  std::string out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (c > 0) out.push_back(',');
    out += std::to_string(counts[c]);
  }
  return out;
}

}  // namespace

std::string CertifiedSize::ToString() const {
  return std::to_string(twice_) + "/2";
}

CertifiedSize CertifiedSize::Parse(std::string_view text) {
  std::int64_t twice = 0;
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos || text.substr(slash) != "/2") {
    throw Error(ErrorCode::kParse, "certified size must look like 'n/2'");
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + slash, twice);
  if (ec != std::errc() || ptr != text.data() + slash) {
    throw Error(ErrorCode::kParse, "bad certified size numerator");
  }
  return FromTwice(twice);
}

CertifiedSize ComputeCertifiedSize(std::span<const int> counts, int y) {
  int runner_up = std::numeric_limits<int>::min();
  for (int c = 1; c <= static_cast<int>(counts.size()); ++c) {
    if (c == y) continue;
    runner_up = std::max(runner_up, counts[c - 1] + (y > c ? 1 : 0));
  }
  if (runner_up == std::numeric_limits<int>::min()) runner_up = 0;
  return CertifiedSize::FromTwice(counts[y - 1] - runner_up);
}

ExampleVotes MakeExampleVotes(std::uint64_t id, int truth, VoteVector votes) {
  ExampleVotes ex;
  ex.id = id;
  ex.truth = truth;
  ex.prediction = PluralityLabel(votes.counts);
  ex.size = ComputeCertifiedSize(votes.counts, ex.prediction);
  ex.votes = std::move(votes);
  return ex;
}

std::vector<ExampleVotes> CollectVotes(const EnsembleModel& model,
                                       const LabeledDataset& testset,
                                       unsigned workers) {
  std::vector<ExampleVotes> out(testset.size());
  ParallelFor(out.size(), workers, [&](std::size_t i) {
    const LabeledExample& ex = testset.examples[i];
    out[i] = MakeExampleVotes(ex.id, ex.label, Vote(model, ex.text));
  });
  return out;
}

Accuracy IndividualCertifiedAccuracy(std::span<const ExampleVotes> examples,
                                     int num_groups, int t) {
  Accuracy acc{0, examples.size()};
  if (t < 0 || t > MeaningfulTriggerLimit(num_groups)) return acc;
  for (const ExampleVotes& ex : examples) {
    if (ex.correct() && ex.size.Covers(t)) ++acc.correct;
  }
  return acc;
}

Accuracy IndividualCertifiedAccuracy(const EnsembleModel& model,
                                     const LabeledDataset& testset, int t) {
  return IndividualCertifiedAccuracy(CollectVotes(model, testset),
                                     model.cfg.num_groups, t);
}

bool SurvivesCorruption(const ExampleVotes& example,
                        std::span<const int> corrupted) {
  const int y = example.prediction;
  const auto& labels = example.votes.per_group_labels;
  const auto& counts = example.votes.counts;
  std::vector<int> hits(counts.size(), 0);
  for (int j : corrupted) ++hits[labels[j - 1] - 1];
  const int t = static_cast<int>(corrupted.size());
  const int upper = counts[y - 1] - hits[y - 1];
  for (int c = 1; c <= static_cast<int>(counts.size()); ++c) {
    if (c == y) continue;
    const int lower = counts[c - 1] + (t - hits[c - 1]) + (y > c ? 1 : 0);
    if (upper < lower) return false;
  }
  return true;
}

Accuracy JointCertifiedAccuracy(std::span<const ExampleVotes> examples,
                                int num_groups, int t, unsigned workers) {
  if (t < 0 || t > num_groups) {
    throw Error(ErrorCode::kConfig, "joint certification needs 0 <= t <= m");
  }
  std::size_t best = examples.size();
  std::vector<std::vector<int>> batch;
  auto flush = [&] {
    std::vector<std::size_t> scores(batch.size());
    ParallelFor(batch.size(), workers, [&](std::size_t b) {
      std::size_t count = 0;
      for (const ExampleVotes& ex : examples) {
        if (ex.correct() && SurvivesCorruption(ex, batch[b])) ++count;
      }
      scores[b] = count;
    });
    for (std::size_t s : scores) best = std::min(best, s);
    batch.clear();
  };
  ForEachCombination(num_groups, t, [&](std::span<const int> gamma) {
    batch.emplace_back(gamma.begin(), gamma.end());
    if (batch.size() == kJointBatchSize) flush();
    // Once some Γ certifies nothing the minimum cannot drop further.
    return best > 0;
  });
  if (!batch.empty()) flush();
  return Accuracy{best, examples.size()};
}

Accuracy JointCertifiedAccuracy(const EnsembleModel& model,
                                const LabeledDataset& testset, int t,
                                unsigned workers) {
  return JointCertifiedAccuracy(CollectVotes(model, testset, workers),
                                model.cfg.num_groups, t, workers);
}

CertificateCheck VerifyCertificate(const VoteVector& votes, int t,
                            std::uint64_t budget) {
  const int m = votes.num_groups();
  const int num_classes = votes.num_classes();
  const int max_k = std::clamp(t, 0, m);
  std::uint64_t planned = 0;
  for (int k = 0; k <= max_k; ++k) {
    std::uint64_t per_set = 1;
    for (int i = 0; i < k; ++i) per_set = SatMul(per_set, num_classes);
    planned = SatAdd(planned, SatMul(Binomial(m, k), per_set));
  }
  if (planned > budget) {
    throw Error(ErrorCode::kBudget,
                "exhaustive verification needs " + std::to_string(planned) +
                    " manipulations, budget is " + std::to_string(budget));
  }

  const int y = PluralityLabel(votes.counts);
  CertificateCheck check;
  std::vector<int> labels = votes.per_group_labels;
  for (int k = 0; k <= max_k && check.holds; ++k) {
    ForEachCombination(m, k, [&](std::span<const int> gamma) {
      std::vector<int> assignment(k, 1);
      while (true) {
        for (int i = 0; i < k; ++i) labels[gamma[i] - 1] = assignment[i];
        ++check.manipulations_checked;
        if (PluralityLabel(TallyVotes(labels, num_classes).counts) != y) {
          check.holds = false;
          check.counterexample =
              Manipulation{{gamma.begin(), gamma.end()}, assignment};
        }
        for (int j : gamma) labels[j - 1] = votes.per_group_labels[j - 1];
        if (!check.holds) return false;
        int i = k - 1;
        while (i >= 0 && assignment[i] == num_classes) assignment[i--] = 1;
        if (i < 0) return true;
        ++assignment[i];
      }
    });
  }
  return check;
}

CertificateCheck VerifyCertificate(const EnsembleModel& model, const Text& x, int t,
                            std::uint64_t budget) {
  return VerifyCertificate(Vote(model, x), t, budget);
}

DpaEnsemble TrainDpaEnsemble(const LabeledDataset& dataset, int num_partitions,
                             const LearnerSpec& learner, HashAlgorithm hash,
                             unsigned workers) {
  if (num_partitions < 1) {
    throw Error(ErrorCode::kConfig, "need at least one partition");
  }
  learner.Validate();
  std::vector<LabeledDataset> partitions(num_partitions);
  std::vector<std::size_t> class_counts(dataset.num_classes, 0);
  for (LabeledDataset& p : partitions) p.num_classes = dataset.num_classes;
  for (const LabeledExample& ex : dataset.examples) {
    const std::uint64_t h = DigestPrefix64(hash, ex.text.Join());
    partitions[h % static_cast<std::uint64_t>(num_partitions)]
        .examples.push_back(ex);
    ++class_counts[ex.label - 1];
  }
  std::vector<std::optional<BaseModel>> trained(num_partitions);
  ParallelFor(trained.size(), workers, [&](std::size_t j) {
    if (partitions[j].empty()) {
      trained[j] = BaseModel::PriorOnly(class_counts);
      return;
    }
    LearnerSpec spec = learner;
    spec.seed = DeriveSeed(hash, learner.seed,
                           "partition:" + std::to_string(j + 1));
    trained[j] = Train(spec, partitions[j]);
  });
  DpaEnsemble model;
  model.hash = hash;
  model.num_classes = dataset.num_classes;
  for (auto& m : trained) model.base_models.push_back(std::move(*m));
  return model;
}

std::vector<ExampleVotes> CollectDpaVotes(const DpaEnsemble& model,
                                          const LabeledDataset& testset,
                                          unsigned workers) {
  std::vector<ExampleVotes> out(testset.size());
  ParallelFor(out.size(), workers, [&](std::size_t i) {
    const LabeledExample& ex = testset.examples[i];
    std::vector<int> labels;
    labels.reserve(model.base_models.size());
    for (const BaseModel& f : model.base_models) {
      labels.push_back(f.Predict(ex.text));
    }
    out[i] = MakeExampleVotes(ex.id, ex.label,
                              TallyVotes(labels, model.num_classes));
  });
  return out;
}

Accuracy DpaCertifiedAccuracy(std::span<const ExampleVotes> examples,
                              int budget) {
  Accuracy acc{0, examples.size()};
  for (const ExampleVotes& ex : examples) {
    if (ex.correct() && ex.size.Covers(budget)) ++acc.correct;
  }
  return acc;
}

Accuracy DpaBaselineCertify(const LabeledDataset& dataset,
                            const LabeledDataset& testset, int num_partitions,
                            int budget, const LearnerSpec& learner,
                            unsigned workers) {
  const DpaEnsemble model =
      TrainDpaEnsemble(dataset, num_partitions, learner,
                       HashAlgorithm::kMd5, workers);
  return DpaCertifiedAccuracy(CollectDpaVotes(model, testset, workers), budget);
}

const char* CertificationMethodName(CertificationMethod method) {
  switch (method) {
    case CertificationMethod::kIndividual: return "individual";
    case CertificationMethod::kJoint: return "joint";
    case CertificationMethod::kDpaBaseline: return "dpa_baseline";
  }
  return "unknown";
}

CertificationMethod ParseCertificationMethod(std::string_view name) {
  if (name == "individual") return CertificationMethod::kIndividual;
  if (name == "joint") return CertificationMethod::kJoint;
  if (name == "dpa_baseline" || name == "dpa") {
    return CertificationMethod::kDpaBaseline;
  }
  throw Error(ErrorCode::kConfig,
              "unknown certification method '" + std::string(name) + "'");
}

const CaEntry* CertificationReport::Find(CertificationMethod method,
                                         int t) const {
  for (const CaEntry& e : table) {
    if (e.method == method && e.t == t) return &e;
  }
  return nullptr;
}

CertificationReport BuildCertificationReport(
    std::vector<ExampleVotes> examples, int num_groups, int max_t,
    std::span<const CertificationMethod> methods, unsigned workers) {
  CertificationReport report;
  report.num_groups = num_groups;
  report.examples = std::move(examples);
  const int limit = MeaningfulTriggerLimit(num_groups);
  for (CertificationMethod method : methods) {
    for (int t = 0; t <= max_t; ++t) {
      Accuracy acc{0, report.examples.size()};
      if (method == CertificationMethod::kIndividual) {
        acc = IndividualCertifiedAccuracy(report.examples, num_groups, t);
      } else if (method == CertificationMethod::kJoint) {
        if (t <= limit) {
          acc = JointCertifiedAccuracy(report.examples, num_groups, t, workers);
        }
      } else {
        continue;
      }
      report.table.push_back({method, t, acc});
    }
  }
  return report;
}

std::string FormatReportTable(const CertificationReport& report) {
  std::ostringstream out;
  out << "certified accuracy (m=" << report.num_groups
      << ", n=" << report.examples.size()
      << ", meaningful t <= " << MeaningfulTriggerLimit(report.num_groups)
      << ")\n";

  std::vector<CertificationMethod> methods;
  std::vector<int> ts;
  for (const CaEntry& e : report.table) {
    if (std::find(methods.begin(), methods.end(), e.method) == methods.end()) {
      methods.push_back(e.method);
    }
    if (std::find(ts.begin(), ts.end(), e.t) == ts.end()) ts.push_back(e.t);
  }
  std::sort(ts.begin(), ts.end());
  out << std::setw(6) << "t";
  for (CertificationMethod m : methods) {
    out << std::setw(14) << CertificationMethodName(m);
  }
  out << "\n";
  for (int t : ts) {
    out << std::setw(6) << t;
    for (CertificationMethod m : methods) {
      const CaEntry* e = report.Find(m, t);
      out << std::setw(14) << (e ? FormatFixed(e->accuracy.value(), 4) : "-");
    }
    out << "\n";
  }
  if (methods.size() > 0 &&
      std::find(methods.begin(), methods.end(),
                CertificationMethod::kDpaBaseline) != methods.end()) {
    out << "(dpa_baseline rows are indexed by poisoned-example budget)\n";
  }

  out << "\n"
      << std::setw(8) << "id" << std::setw(6) << "y" << std::setw(7) << "truth"
      << std::setw(14) << "counts" << std::setw(8) << "s" << "\n";
  for (const ExampleVotes& ex : report.examples) {
    out << std::setw(8) << ex.id << std::setw(6) << ex.prediction
        << std::setw(7) << ex.truth << std::setw(14)
        << JoinCounts(ex.votes.counts) << std::setw(8) << ex.size.ToString()
        << "\n";
  }
  return out.str();
}

std::string FormatReportRecords(const CertificationReport& report) {
  std::ostringstream out;
  out << "#m\t" << report.num_groups << "\n";
  out << "#fields\tid\ty\ttruth\tcounts\ts\n";
  for (const ExampleVotes& ex : report.examples) {
    out << ex.id << '\t' << ex.prediction << '\t' << ex.truth << '\t'
        << JoinCounts(ex.votes.counts) << '\t' << ex.size.ToString() << '\n';
  }
  for (const CaEntry& e : report.table) {
    out << "#ca\t" << CertificationMethodName(e.method) << '\t' << e.t << '\t'
        << FormatFixed(e.accuracy.value(), 6) << '\t' << e.accuracy.correct
        << '/' << e.accuracy.total << '\n';
  }
  return out.str();
}

}  // namespace hashvote
