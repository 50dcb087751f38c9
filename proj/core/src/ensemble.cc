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

#include "hashvote/ensemble.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <sstream>

#include "hashvote/digest.h"
#include "hashvote/error.h"
#include "hashvote/parallel.h"

namespace hashvote {
namespace {

constexpr int kEnsembleFormatVersion = 1;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

int ParseManifestInt(const std::map<std::string, std::string>& fields,
                     const std::string& key) {
  auto it = fields.find(key);
  int value = 0;
  if (it == fields.end() ||
      std::from_chars(it->second.data(), it->second.data() + it->second.size(),
                      value)
              .ec != std::errc()) {
    throw Error(ErrorCode::kParse, "ensemble manifest lacks integer '" + key + "'");
  }
  return value;
}

}  // namespace

VoteVector TallyVotes(std::span<const int> per_group_labels, int num_classes) {
  VoteVector votes;
  votes.counts.assign(num_classes, 0);
  votes.per_group_labels.assign(per_group_labels.begin(),
                                per_group_labels.end());
  for (int label : per_group_labels) ++votes.counts[label - 1];
  return votes;
}

int PluralityLabel(std::span<const int> counts) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c) {
    if (counts[c] > counts[best]) best = c;
  }
  return static_cast<int>(best) + 1;
}

void EnsembleModel::Validate() const {
  cfg.Validate();
  if (static_cast<int>(base_models.size()) != cfg.num_groups) {
    throw Error(ErrorCode::kConfig, "ensemble has " +
                                        std::to_string(base_models.size()) +
                                        " base models for m=" +
                                        std::to_string(cfg.num_groups));
  }
  for (const BaseModel& model : base_models) {
    if (model.num_classes() != num_classes) {
      throw Error(ErrorCode::kConfig, "base model class count mismatch");
    }
  }
}

EnsembleModel TrainEnsemble(const LabeledDataset& dataset,
                            const PartitionConfig& cfg,
                            const LearnerSpec& learner, GroupingMode mode,
                            const TriggerWordSet& confined, unsigned workers) {
  learner.Validate();
  if (dataset.empty()) {
    throw Error(ErrorCode::kTraining, "cannot train on an empty dataset");
  }
  const SubDatasetBundle bundle =
      BuildSubDatasets(dataset, cfg, mode, confined);
  std::vector<std::optional<BaseModel>> trained(cfg.num_groups);
  ParallelFor(trained.size(), workers, [&](std::size_t j) {
    LearnerSpec spec = learner;
    spec.seed = DeriveSeed(cfg.hash, learner.seed,
                           "group:" + std::to_string(j + 1));
    trained[j] = Train(spec, bundle.sub_datasets[j]);
  });
  EnsembleModel model;
  model.cfg = cfg;
  model.mode = mode;
  if (mode == GroupingMode::kSemantic) model.confined = confined;
  model.num_classes = dataset.num_classes;
  for (auto& m : trained) model.base_models.push_back(std::move(*m));
  return model;
}

std::vector<Text> TestInputs(const PartitionConfig& cfg, GroupingMode mode,
                             const Text& x) {
  if (mode == GroupingMode::kCertified) return DivideText(x, cfg).groups;
  return std::vector<Text>(cfg.num_groups, x);
}

VoteVector Vote(const EnsembleModel& model, const Text& x) {
  const std::vector<Text> inputs = TestInputs(model.cfg, model.mode, x);
  std::vector<int> labels(inputs.size());
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    labels[j] = model.base_models[j].Predict(inputs[j]);
  }
  return TallyVotes(labels, model.num_classes);
}

int PredictEnsemble(const EnsembleModel& model, const Text& x) {
  const VoteVector votes = Vote(model, x);
  const int y = PluralityLabel(votes.counts);
  for (int c = 1; c <= votes.num_classes(); ++c) {
    if (c != y && votes.counts[y - 1] < votes.counts[c - 1] + (y > c)) {
      throw std::logic_error("tie-break condition violated");
    }
  }
  return y;
}

void SaveEnsemble(const EnsembleModel& model, const std::string& directory,
                  std::string_view provenance) {
  model.Validate();
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + directory);

  std::vector<std::pair<std::string, std::string>> parts;
  {
    std::string omega;
    for (const Token& w : model.confined) omega += w.surface() + "\n";
    parts.emplace_back("omega.txt", std::move(omega));
  }
  if (model.cfg.hash == HashAlgorithm::kMock) {
    std::string table;
    for (const auto& [word, group] : *model.cfg.mock_table) {
      table += word + "\t" + std::to_string(group) + "\n";
    }
    parts.emplace_back("mock_table.tsv", std::move(table));
  }
  for (std::size_t j = 0; j < model.base_models.size(); ++j) {
    parts.emplace_back("model_" + std::to_string(j + 1) + ".bin",
                       model.base_models[j].Serialize());
  }

  std::ostringstream manifest;
  manifest << "# hashvote ensemble\n";
  if (!provenance.empty()) manifest << "# " << provenance << "\n";
  manifest << "format=" << kEnsembleFormatVersion << "\n"
           << "num_groups=" << model.cfg.num_groups << "\n"
           << "hash=" << HashAlgorithmName(model.cfg.hash) << "\n"
           << "mode=" << GroupingModeName(model.mode) << "\n"
           << "num_classes=" << model.num_classes << "\n";
  for (const auto& [name, contents] : parts) {
    WriteFile(dir / name, contents);
    manifest << "part=" << name << " sha256="
             << HexDigest(HashAlgorithm::kSha256, contents) << "\n";
  }
  WriteFile(dir / "manifest.txt", manifest.str());
}

EnsembleModel LoadEnsemble(const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  std::map<std::string, std::string> fields;
  std::map<std::string, std::string> parts;
  std::istringstream manifest(ReadFile(dir / "manifest.txt"));
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("part=")) {
      const std::size_t space = line.find(" sha256=");
      if (space == std::string::npos) {
        throw Error(ErrorCode::kParse, "bad manifest part line: " + line);
      }
      parts[line.substr(5, space - 5)] = line.substr(space + 8);
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParse, "bad manifest line: " + line);
    }
    fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (ParseManifestInt(fields, "format") != kEnsembleFormatVersion) {
    throw Error(ErrorCode::kParse, "unsupported ensemble format");
  }

  auto read_part = [&](const std::string& name) {
    auto it = parts.find(name);
    if (it == parts.end()) {
      throw Error(ErrorCode::kIntegrity, "manifest does not list " + name);
    }
    std::string contents = ReadFile(dir / name);
    if (HexDigest(HashAlgorithm::kSha256, contents) != it->second) {
      throw Error(ErrorCode::kIntegrity, name + " does not match its digest");
    }
    return contents;
  };

  EnsembleModel model;
  model.cfg.num_groups = ParseManifestInt(fields, "num_groups");
  model.cfg.hash = ParseHashAlgorithm(fields["hash"]);
  model.mode = ParseGroupingMode(fields["mode"]);
  model.num_classes = ParseManifestInt(fields, "num_classes");
  {
    std::istringstream omega(read_part("omega.txt"));
    while (std::getline(omega, line)) {
      if (!line.empty()) model.confined.Insert(Token::FromNormalized(line));
    }
  }
  if (model.cfg.hash == HashAlgorithm::kMock) {
    std::map<std::string, int> table;
    std::istringstream in(read_part("mock_table.tsv"));
    while (std::getline(in, line)) {
      const std::size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      table[line.substr(0, tab)] = std::stoi(line.substr(tab + 1));
    }
    model.cfg.mock_table = std::move(table);
  }
  for (int j = 1; j <= model.cfg.num_groups; ++j) {
    model.base_models.push_back(BaseModel::Deserialize(
        read_part("model_" + std::to_string(j) + ".bin")));
  }
  model.Validate();
  return model;
}

}  // namespace hashvote
