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

#include "cli/run_config.h"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "hashvote/digest.h"
#include "hashvote/error.h"

namespace hashvote::cli {
namespace {

// Reads INI files and renames "[section] key" to "section-key" so the items
// bind to the flat command-line flags. An output directory given through the
// environment beats the one in the file.
class SectionedConfig : public CLI::ConfigINI {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> out;
    const bool env_output = std::getenv(kOutputDirEnv) != nullptr;
    for (CLI::ConfigItem& item : CLI::ConfigINI::from_config(input)) {
      if (item.name == "++" || item.name == "--") continue;
      std::string name;
      for (const std::string& parent : item.parents) name += parent + "-";
      item.name = name + item.name;
      item.parents.clear();
      if (env_output && item.name == "output-dir") continue;
      out.push_back(std::move(item));
    }
    return out;
  }
};

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kConfig, message);
}

void RequireFile(const std::string& path, const std::string& key) {
  if (path.empty()) return;
  Require(std::filesystem::exists(path), key + ": no such file: " + path);
}

}  // namespace

void RunConfig::Validate() const {
  Require(groups >= 1, "partition-groups must be >= 1");
  Require(poison_rate >= 0.0 && poison_rate <= 1.0,
          "poison-rate must be in [0, 1]");
  Require(target >= 1, "poison-target must be >= 1");
  Require(max_t >= -1, "certify-max-t must be >= -1");
  Require(dpa_partitions >= 1, "certify-dpa-partitions must be >= 1");
  Require(adaptive >= 0, "attack-adaptive must be >= 0");
  Partition().Validate();
  Mode();
  ParsePoisonMode(poison_mode);
  Attack().Validate();
  Learner().Validate();
  TriggerId().Validate();
  Methods();
  DpaBudgets();
  RequireFile(train_path, "data-train");
  RequireFile(test_path, "data-test");
  RequireFile(omega_path, "partition-omega");
  if (!model_dir.empty()) {
    Require(std::filesystem::is_directory(model_dir),
            "model-dir: no such directory: " + model_dir);
  }
}

std::string RunConfig::Canonical() const {
  std::ostringstream out;
  out.precision(17);
  out << "data-train=" << train_path << '\n'
      << "data-test=" << test_path << '\n'
      << "partition-groups=" << groups << '\n'
      << "partition-hash=" << hash << '\n'
      << "partition-mode=" << mode << '\n'
      << "partition-omega=" << omega_path << '\n'
      << "poison-mode=" << poison_mode << '\n'
      << "poison-rate=" << poison_rate << '\n'
      << "poison-target=" << target << '\n'
      << "attack-kind=" << attack_kind << '\n'
      << "attack-triggers=" << triggers << '\n'
      << "attack-sentence=" << sentence << '\n'
      << "attack-adaptive=" << adaptive << '\n'
      << "learner-kind=" << learner << '\n'
      << "learner-smoothing=" << smoothing << '\n'
      << "learner-learning-rate=" << learning_rate << '\n'
      << "learner-epochs=" << epochs << '\n'
      << "learner-feature-dim=" << feature_dim << '\n'
      << "learner-l2=" << l2 << '\n'
      << "trigger-id-threshold=" << threshold << '\n'
      << "trigger-id-top-k=" << top_k << '\n'
      << "trigger-id-probe=" << probe << '\n'
      << "certify-max-t=" << max_t << '\n'
      << "certify-methods=" << methods << '\n'
      << "certify-dpa-partitions=" << dpa_partitions << '\n'
      << "certify-dpa-budgets=" << dpa_budgets << '\n'
      << "certify-verify=" << verify << '\n'
      << "certify-verify-budget=" << verify_budget << '\n'
      << "model-dir=" << model_dir << '\n'
      << "run-seed=" << seed << '\n';
  return out.str();
}

std::string RunConfig::Digest() const {
  return HexDigest(HashAlgorithm::kSha256, Canonical());
}

PartitionConfig RunConfig::Partition() const {
  PartitionConfig cfg;
  cfg.num_groups = groups;
  cfg.hash = ParseHashAlgorithm(hash);
  Require(cfg.hash != HashAlgorithm::kMock,
          "partition-hash=mock is only available to the library");
  return cfg;
}

GroupingMode RunConfig::Mode() const { return ParseGroupingMode(mode); }

PoisonSpec RunConfig::Poison() const {
  return {ParsePoisonMode(poison_mode), poison_rate, target,
          DeriveSeed(HashAlgorithm::kSha256, seed, "poison")};
}

AttackSpec RunConfig::Attack() const {
  AttackSpec spec;
  spec.kind = ParseAttackKind(attack_kind);
  if (spec.kind != AttackKind::kAddSent && adaptive > 0) {
    spec.trigger_words = ChooseGroupDistinctTriggers(
        RareWordCandidates(), static_cast<std::size_t>(adaptive), Partition());
  } else if (spec.kind != AttackKind::kAddSent) {
    for (const std::string& w : SplitList(triggers)) {
      spec.trigger_words.Insert(Token(w));
    }
  } else {
    spec.trigger_sentence = Normalize(sentence);
  }
  spec.seed = DeriveSeed(HashAlgorithm::kSha256, seed, "attack");
  return spec;
}

LearnerSpec RunConfig::Learner() const {
  LearnerSpec spec;
  spec.kind = ParseLearnerKind(learner);
  spec.smoothing = smoothing;
  spec.learning_rate = learning_rate;
  spec.epochs = epochs;
  spec.feature_dim = feature_dim;
  spec.l2 = l2;
  spec.seed = DeriveSeed(HashAlgorithm::kSha256, seed, "learner");
  return spec;
}

TriggerIdConfig RunConfig::TriggerId() const {
  TriggerIdConfig cfg;
  cfg.threshold = threshold;
  cfg.top_k = top_k;
  cfg.probe = Learner();
  cfg.probe.kind = ParseLearnerKind(probe);
  cfg.probe.seed = DeriveSeed(HashAlgorithm::kSha256, seed, "probe");
  return cfg;
}

std::vector<CertificationMethod> RunConfig::Methods() const {
  std::vector<CertificationMethod> out;
  for (const std::string& name : SplitList(methods)) {
    out.push_back(ParseCertificationMethod(name));
  }
  Require(!out.empty(), "certify-methods is empty");
  return out;
}

std::vector<int> RunConfig::DpaBudgets() const {
  std::vector<int> out;
  for (const std::string& item : SplitList(dpa_budgets)) {
    try {
      std::size_t used = 0;
      const int b = std::stoi(item, &used);
      Require(used == item.size() && b >= 0, "bad dpa budget: " + item);
      out.push_back(b);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kConfig, "bad dpa budget: " + item);
    }
  }
  return out;
}

int RunConfig::MaxT() const {
  return max_t < 0 ? MeaningfulTriggerLimit(groups) : max_t;
}

void AddRunConfigOptions(CLI::App& app, RunConfig& cfg) {
  app.config_formatter(std::make_shared<SectionedConfig>());
  app.set_config("--config", "", "Sectioned key = value config file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("--data-train", cfg.train_path, "Training dataset (TSV)");
  app.add_option("--data-test", cfg.test_path, "Test dataset (TSV)");
  app.add_option("--partition-groups", cfg.groups, "Number of groups m");
  app.add_option("--partition-hash", cfg.hash, "md5, sha1 or sha256");
  app.add_option("--partition-mode", cfg.mode, "certified or semantic");
  app.add_option("--partition-omega", cfg.omega_path,
                 "Confined word list for semantic mode");
  app.add_option("--poison-mode", cfg.poison_mode, "mixed, clean or dirty");
  app.add_option("--poison-rate", cfg.poison_rate, "Poisoning rate p");
  app.add_option("--poison-target", cfg.target, "Target class");
  app.add_option("--attack-kind", cfg.attack_kind,
                 "badword, addsent or reorder");
  app.add_option("--attack-triggers", cfg.triggers,
                 "Trigger words (badword, reorder)")
      ->delimiter(' ')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--attack-sentence", cfg.sentence,
                 "Trigger sentence (addsent)")
      ->delimiter(' ')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--attack-adaptive", cfg.adaptive,
                 "Choose this many trigger words with distinct hash groups");
  app.add_option("--learner-kind", cfg.learner, "naive_bayes or linear");
  app.add_option("--learner-smoothing", cfg.smoothing);
  app.add_option("--learner-learning-rate", cfg.learning_rate);
  app.add_option("--learner-epochs", cfg.epochs);
  app.add_option("--learner-feature-dim", cfg.feature_dim);
  app.add_option("--learner-l2", cfg.l2);
  app.add_option("--trigger-id-threshold", cfg.threshold, "K");
  app.add_option("--trigger-id-top-k", cfg.top_k);
  app.add_option("--trigger-id-probe", cfg.probe, "Probe learner kind");
  app.add_option("--certify-max-t", cfg.max_t,
                 "Largest trigger size reported (-1: floor((m-1)/2))");
  app.add_option("--certify-methods", cfg.methods,
                 "individual, joint, dpa_baseline")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--certify-dpa-partitions", cfg.dpa_partitions);
  app.add_option("--certify-dpa-budgets", cfg.dpa_budgets,
                 "Poisoned-example budgets for the baseline")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--certify-verify", cfg.verify,
                 "Exhaustively re-check every certificate");
  app.add_option("--certify-verify-budget", cfg.verify_budget);
  app.add_option("--model-dir", cfg.model_dir, "Trained ensemble directory");
  app.add_option("--output-dir", cfg.output_dir)->envname(kOutputDirEnv);
  app.add_option("--run-seed", cfg.seed);
  app.add_option("--run-workers", cfg.workers, "0: hardware concurrency");
}

}  // namespace hashvote::cli
