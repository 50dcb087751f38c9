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

#include "hashvote/corpus.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "hashvote/error.h"

namespace hashvote {

void LabeledDataset::Validate() const {
  if (num_classes < 2) {
    throw Error(ErrorCode::kSchema, "a dataset needs at least 2 classes");
  }
  std::set<std::uint64_t> ids;
  for (const LabeledExample& ex : examples) {
    if (ex.label < 1 || ex.label > num_classes) {
      throw Error(ErrorCode::kSchema,
                  "example " + std::to_string(ex.id) + " has label " +
                      std::to_string(ex.label) + " outside [1, " +
                      std::to_string(num_classes) + "]");
    }
    if (!ids.insert(ex.id).second) {
      throw Error(ErrorCode::kSchema,
                  "duplicate example id " + std::to_string(ex.id));
    }
  }
}

namespace {

bool ParseInt(std::string_view text, int& value) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

Error ParseError(std::size_t line_number, const std::string& what) {
  return Error(ErrorCode::kParse,
               "line " + std::to_string(line_number) + ": " + what);
}

}  // namespace

LabeledDataset ParseDataset(std::string_view contents) {
  LabeledDataset dataset;
  int declared_classes = 0;
  int max_label = 0;
  std::size_t line_number = 0;
  std::uint64_t next_id = 0;
  while (!contents.empty()) {
    const std::size_t eol = contents.find('\n');
    std::string_view line = contents.substr(0, eol);
    contents.remove_prefix(eol == std::string_view::npos ? contents.size()
                                                         : eol + 1);
    ++line_number;
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kClasses = "#classes=";
      if (line.starts_with(kClasses)) {
        if (line_number != 1) {
          throw ParseError(line_number, "#classes header must be the first line");
        }
        if (!ParseInt(line.substr(kClasses.size()), declared_classes) ||
            declared_classes < 2) {
          throw ParseError(line_number, "bad class count");
        }
      }
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(line_number, "expected 'label<TAB>text'");
    }
    int label = 0;
    if (!ParseInt(line.substr(0, tab), label)) {
      throw ParseError(line_number, "label is not an integer");
    }
    if (label < 1 || (declared_classes > 0 && label > declared_classes)) {
      throw Error(ErrorCode::kSchema, "line " + std::to_string(line_number) +
                                          ": label " + std::to_string(label) +
                                          " out of range");
    }
    Text text;
    try {
      text = Normalize(line.substr(tab + 1));
    } catch (const Error& e) {
      throw Error(e.code(),
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
    max_label = std::max(max_label, label);
    dataset.examples.push_back({std::move(text), label, next_id++});
  }
  if (declared_classes > 0) {
    dataset.num_classes = declared_classes;
  } else if (dataset.examples.empty()) {
    throw Error(ErrorCode::kSchema,
                "empty dataset without a #classes header");
  } else {
    dataset.num_classes = std::max(2, max_label);
  }
  return dataset;
}

LabeledDataset LoadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseDataset(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string SerializeDataset(const LabeledDataset& dataset) {
  std::string out = "#classes=" + std::to_string(dataset.num_classes) + "\n";
  for (const LabeledExample& ex : dataset.examples) {
    out += std::to_string(ex.label);
    out.push_back('\t');
    out += ex.text.Join();
    out.push_back('\n');
  }
  return out;
}

void SaveDataset(const LabeledDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << SerializeDataset(dataset);
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

const char* PoisonModeName(PoisonMode mode) {
  switch (mode) {
    case PoisonMode::kMixed: return "mixed";
    case PoisonMode::kClean: return "clean";
    case PoisonMode::kDirty: return "dirty";
  }
  return "unknown";
}

PoisonMode ParsePoisonMode(std::string_view name) {
  if (name == "mixed") return PoisonMode::kMixed;
  if (name == "clean") return PoisonMode::kClean;
  if (name == "dirty") return PoisonMode::kDirty;
  throw Error(ErrorCode::kConfig,
              "unknown poison mode '" + std::string(name) + "'");
}

void PoisonSpec::Validate(int num_classes) const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::kConfig, "poison rate must lie in [0, 1]");
  }
  if (target_class < 1 || target_class > num_classes) {
    throw Error(ErrorCode::kConfig, "target class " +
                                        std::to_string(target_class) +
                                        " outside [1, C]");
  }
}

std::vector<std::size_t> SelectPoisonTargets(const LabeledDataset& dataset,
                                             const PoisonSpec& spec) {
  spec.Validate(dataset.num_classes);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
    const int label = dataset.examples[i].label;
    const bool eligible =
        spec.mode == PoisonMode::kMixed ||
        (spec.mode == PoisonMode::kClean && label == spec.target_class) ||
        (spec.mode == PoisonMode::kDirty && label != spec.target_class);
    if (eligible) candidates.push_back(i);
  }
  // The epsilon absorbs products such as 0.1 * 30 = 3.0000000000000004
  // landing just below an integer.
  const auto count = static_cast<std::size_t>(
      std::floor(spec.rate * static_cast<double>(candidates.size()) + 1e-9));
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) {
              return dataset.examples[a].id < dataset.examples[b].id;
            });
  std::mt19937_64 rng(spec.seed);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  candidates.resize(std::min(count, candidates.size()));
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

LabeledDataset MakeCertifiedTrainingSet(const LabeledDataset& dataset,
                                        const PoisonSpec& spec) {
  spec.Validate(dataset.num_classes);
  if (spec.mode == PoisonMode::kClean) return dataset;
  LabeledDataset out = dataset;
  for (std::size_t i : SelectPoisonTargets(dataset, spec)) {
    out.examples[i].label = spec.target_class;
  }
  return out;
}

SubDatasetBundle BuildSubDatasets(const LabeledDataset& dataset,
                                  const PartitionConfig& cfg,
                                  GroupingMode mode,
                                  const TriggerWordSet& confined) {
  cfg.Validate();
  SubDatasetBundle bundle;
  bundle.sub_datasets.resize(cfg.num_groups);
  for (LabeledDataset& sub : bundle.sub_datasets) {
    sub.num_classes = dataset.num_classes;
    sub.examples.reserve(dataset.size());
  }
  for (const LabeledExample& ex : dataset.examples) {
    TextGroups groups = mode == GroupingMode::kCertified
                            ? DivideText(ex.text, cfg)
                            : DivideTextSemantic(ex.text, cfg, confined);
    for (int j = 0; j < cfg.num_groups; ++j) {
      bundle.sub_datasets[j].examples.push_back(
          {std::move(groups.groups[j]), ex.label, ex.id});
    }
  }
  return bundle;
}

}  // namespace hashvote
