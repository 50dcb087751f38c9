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

#ifndef HASHVOTE_TOOLS_CLI_RUN_CONFIG_H_
#define HASHVOTE_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hashvote/attacks.h"
#include "hashvote/certification.h"
#include "hashvote/corpus.h"
#include "hashvote/learners.h"
#include "hashvote/partition.h"
#include "hashvote/trigger_id.h"

namespace CLI {
class App;
}  // namespace CLI

namespace hashvote::cli {

inline constexpr char kOutputDirEnv[] = "HASHVOTE_OUTPUT_DIR";

// Every knob of a run. Config files use "[section]" headers with "key = value"
// lines; each key is also the command-line flag "--<section>-<key>".
struct RunConfig {
  // [data]
  std::string train_path;
  std::string test_path;
  // [partition]
  int groups = 7;
  std::string hash = "md5";
  std::string mode = "certified";
  std::string omega_path;
  // [poison]
  std::string poison_mode = "mixed";
  double poison_rate = 0.1;
  int target = 1;
  // [attack]
  std::string attack_kind = "badword";
  std::string triggers = "cf mn bb tq";
  std::string sentence = "I watch this 3D movie";
  int adaptive = 0;  // > 0: pick this many triggers in distinct groups
  // [learner]
  std::string learner = "naive_bayes";
  double smoothing = 1.0;
  double learning_rate = 0.5;
  int epochs = 200;
  int feature_dim = 4096;
  double l2 = 1e-4;
  // [trigger-id]
  int threshold = 20;
  int top_k = 5;
  std::string probe = "linear";
  // [certify]
  int max_t = -1;  // -1: floor((m - 1) / 2)
  std::string methods = "individual,joint";
  int dpa_partitions = 9;
  std::string dpa_budgets = "0,1";
  bool verify = false;
  std::uint64_t verify_budget = kDefaultVerificationBudget;
  // [model]
  std::string model_dir;
  // [output]
  std::string output_dir = "hashvote_out";
  // [run]
  std::uint64_t seed = 0;
  unsigned workers = 0;

  // Throws Error(kConfig) on out-of-range values or missing input files.
  void Validate() const;

  // "section-key=value" lines in a fixed order. Leaves out the output
  // directory and the worker count, which do not affect results.
  std::string Canonical() const;
  std::string Digest() const;

  PartitionConfig Partition() const;
  GroupingMode Mode() const;
  PoisonSpec Poison() const;
  AttackSpec Attack() const;
  LearnerSpec Learner() const;
  TriggerIdConfig TriggerId() const;
  std::vector<CertificationMethod> Methods() const;
  std::vector<int> DpaBudgets() const;
  int MaxT() const;
};

// Registers every RunConfig field on `app` and installs the sectioned config
// file reader behind "--config".
void AddRunConfigOptions(CLI::App& app, RunConfig& cfg);

}  // namespace hashvote::cli

#endif  // HASHVOTE_TOOLS_CLI_RUN_CONFIG_H_
