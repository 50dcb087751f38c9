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

#include "cli/commands.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hashvote/attacks.h"
#include "hashvote/certification.h"
#include "hashvote/corpus.h"
#include "hashvote/digest.h"
#include "hashvote/ensemble.h"
#include "hashvote/parallel.h"
#include "hashvote/trigger_id.h"

namespace hashvote::cli {
namespace fs = std::filesystem;
namespace {

std::string ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string Sha256(std::string_view bytes) {
  return HexDigest(HashAlgorithm::kSha256, bytes);
}

std::string Fixed(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << v;
  return out.str();
}

struct InputFile {
  std::string bytes;
  LabeledDataset dataset;
};

InputFile LoadInput(const std::string& path, const char* key) {
  if (path.empty()) {
    throw Error(ErrorCode::kConfig, std::string(key) + " is required");
  }
  InputFile in;
  in.bytes = ReadBytes(path);
  in.dataset = ParseDataset(in.bytes);
  return in;
}

// Collects the files of one run, stamps report files with a provenance
// header and finishes with manifest.txt listing every output's digest.
class RunOutput {
 public:
  RunOutput(std::string command, const RunConfig& cfg)
      : command_(std::move(command)), dir_(cfg.output_dir),
        config_digest_(cfg.Digest()) {}

  void AddInput(const std::string& role, std::string_view bytes) {
    inputs_[role] = Sha256(bytes);
  }

  std::string Header() const {
    std::string h = "# hashvote " + command_ + "\n# config-sha256 " +
                    config_digest_ + "\n";
    for (const auto& [role, digest] : inputs_) {
      h += "# input " + role + " sha256 " + digest + "\n";
    }
    return h;
  }

  std::string provenance() const { return "config-sha256=" + config_digest_; }

  // Created on first use so a run that fails early leaves nothing behind.
  const fs::path& dir() {
    if (!created_) {
      fs::create_directories(dir_);
      created_ = true;
    }
    return dir_;
  }

  void Write(const std::string& name, const std::string& body,
             bool with_header) {
    const std::string bytes = with_header ? Header() + body : body;
    WriteRaw(dir() / name, bytes);
    files_[name] = Sha256(bytes);
  }

  void Track(const std::string& name) {
    files_[name] = Sha256(ReadBytes((dir_ / name).string()));
  }

  void Time(const std::string& phase, double seconds) {
    timings_ << phase << '\t' << Fixed(seconds) << '\n';
  }

  void Finish() {
    std::string manifest = "command=" + command_ + "\nconfig-sha256=" +
                           config_digest_ + "\n";
    for (const auto& [role, digest] : inputs_) {
      manifest += "input=" + role + " sha256=" + digest + "\n";
    }
    for (const auto& [name, digest] : files_) {
      manifest += "file=" + name + " sha256=" + digest + "\n";
    }
    WriteRaw(dir() / "manifest.txt", manifest);
    // Wall-clock numbers vary between runs, so they stay out of the manifest.
    WriteRaw(dir_ / "timings.tsv", "phase\tseconds\n" + timings_.str());
  }

 private:
  static void WriteRaw(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }

  std::string command_;
  fs::path dir_;
  bool created_ = false;
  std::string config_digest_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> files_;
  std::ostringstream timings_;
};

class Stopwatch {
 public:
  double Lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

TriggerWordSet ConfinedWords(const RunConfig& cfg, const LabeledDataset& train,
                             RunOutput& out) {
  if (cfg.Mode() != GroupingMode::kSemantic) return {};
  if (!cfg.omega_path.empty()) {
    out.AddInput("omega", ReadBytes(cfg.omega_path));
    return LoadWordSet(cfg.omega_path);
  }
  const TriggerWordSet omega =
      IdentifyTriggerWords(train, cfg.TriggerId(), cfg.workers);
  SaveWordSet(omega, (out.dir() / "omega.txt").string());
  out.Track("omega.txt");
  return omega;
}

// The ensemble named by model-dir, or one trained from data-train.
EnsembleModel ObtainEnsemble(const RunConfig& cfg, RunOutput& out,
                             Stopwatch& clock) {
  if (!cfg.model_dir.empty()) {
    EnsembleModel model = LoadEnsemble(cfg.model_dir);
    out.AddInput("model", ReadBytes(
        (fs::path(cfg.model_dir) / "manifest.txt").string()));
    out.Time("load_model", clock.Lap());
    return model;
  }
  const InputFile train = LoadInput(cfg.train_path, "data-train");
  out.AddInput("train", train.bytes);
  const TriggerWordSet omega = ConfinedWords(cfg, train.dataset, out);
  EnsembleModel model = TrainEnsemble(train.dataset, cfg.Partition(),
                                      cfg.Learner(), cfg.Mode(), omega,
                                      cfg.workers);
  out.Time("train", clock.Lap());
  return model;
}

void RequireCertifiedMode(const EnsembleModel& model) {
  if (model.mode != GroupingMode::kCertified) {
    throw Error(ErrorCode::kConfig,
                "certificates need an ensemble trained in certified mode");
  }
}

std::string AccuracyCell(const Accuracy& a) {
  return Fixed(a.value()) + "\t" + std::to_string(a.correct) + "/" +
         std::to_string(a.total);
}

void CmdPoison(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("poison", cfg);
  Stopwatch clock;
  const InputFile train = LoadInput(cfg.train_path, "data-train");
  out.AddInput("train", train.bytes);
  const PoisonSpec poison = cfg.Poison();
  const LabeledDataset poisoned =
      PoisonDataset(train.dataset, poison, cfg.Attack());
  const LabeledDataset certified =
      MakeCertifiedTrainingSet(train.dataset, poison);
  out.Time("poison", clock.Lap());
  // Unchanged datasets are emitted as the input bytes themselves.
  auto bytes_of = [&](const LabeledDataset& d) {
    return d == train.dataset ? train.bytes : SerializeDataset(d);
  };
  out.Write("poisoned.tsv", bytes_of(poisoned), false);
  out.Write("certified.tsv", bytes_of(certified), false);
  out.Finish();
  log << "poisoned " << SelectPoisonTargets(train.dataset, poison).size()
      << " of " << train.dataset.size() << " examples\n";
}

void CmdTrain(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("train", cfg);
  Stopwatch clock;
  const InputFile train = LoadInput(cfg.train_path, "data-train");
  out.AddInput("train", train.bytes);
  const TriggerWordSet omega = ConfinedWords(cfg, train.dataset, out);
  out.Time("identify_triggers", clock.Lap());
  const EnsembleModel model =
      TrainEnsemble(train.dataset, cfg.Partition(), cfg.Learner(), cfg.Mode(),
                    omega, cfg.workers);
  out.Time("train", clock.Lap());
  SaveEnsemble(model, (out.dir() / "model").string(), out.provenance());
  out.Track("model/manifest.txt");
  out.Finish();
  log << "trained " << model.base_models.size() << " base models\n";
}

void CmdPredict(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("predict", cfg);
  Stopwatch clock;
  const EnsembleModel model = ObtainEnsemble(cfg, out, clock);
  const InputFile test = LoadInput(cfg.test_path, "data-test");
  out.AddInput("test", test.bytes);
  const std::vector<ExampleVotes> votes =
      CollectVotes(model, test.dataset, cfg.workers);
  out.Time("predict", clock.Lap());
  std::ostringstream body;
  body << "#fields\tid\ttruth\tprediction\tcounts\n";
  std::size_t correct = 0;
  for (const ExampleVotes& ex : votes) {
    body << ex.id << '\t' << ex.truth << '\t' << ex.prediction << '\t';
    for (std::size_t c = 0; c < ex.votes.counts.size(); ++c) {
      body << (c ? "," : "") << ex.votes.counts[c];
    }
    body << '\n';
    correct += ex.correct();
  }
  out.Write("predictions.tsv", body.str(), true);
  out.Finish();
  log << "accuracy " << AccuracyCell({correct, votes.size()}) << "\n";
}

void AppendDpa(const RunConfig& cfg, const LabeledDataset& train,
               const LabeledDataset& test, CertificationReport& report) {
  const DpaEnsemble dpa = TrainDpaEnsemble(
      train, cfg.dpa_partitions, cfg.Learner(), HashAlgorithm::kMd5,
      cfg.workers);
  const std::vector<ExampleVotes> votes = CollectDpaVotes(dpa, test, cfg.workers);
  for (int budget : cfg.DpaBudgets()) {
    report.table.push_back({CertificationMethod::kDpaBaseline, budget,
                            DpaCertifiedAccuracy(votes, budget)});
  }
}

bool WantsDpa(const RunConfig& cfg) {
  for (CertificationMethod m : cfg.Methods()) {
    if (m == CertificationMethod::kDpaBaseline) return true;
  }
  return false;
}

std::vector<CertificationMethod> WordMethods(const RunConfig& cfg) {
  std::vector<CertificationMethod> out;
  for (CertificationMethod m : cfg.Methods()) {
    if (m != CertificationMethod::kDpaBaseline) out.push_back(m);
  }
  return out;
}

// Re-checks every certificate by exhaustive manipulation.
std::string VerifyCertificates(const RunConfig& cfg,
                               const CertificationReport& report) {
  std::uint64_t manipulations = 0;
  std::size_t checks = 0;
  for (const ExampleVotes& ex : report.examples) {
    for (int t = 1; t <= cfg.MaxT() && ex.size.Covers(t); ++t) {
      const CertificateCheck check =
          VerifyCertificate(ex.votes, t, cfg.verify_budget);
      if (!check.holds) {
        throw std::logic_error("certificate of example " +
                               std::to_string(ex.id) + " failed at t=" +
                               std::to_string(t));
      }
      manipulations += check.manipulations_checked;
      ++checks;
    }
  }
  return "#verified\t" + std::to_string(checks) + "\t" +
         std::to_string(manipulations) + "\n";
}

void CmdCertify(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("certify", cfg);
  Stopwatch clock;
  const EnsembleModel model = ObtainEnsemble(cfg, out, clock);
  RequireCertifiedMode(model);
  const InputFile test = LoadInput(cfg.test_path, "data-test");
  out.AddInput("test", test.bytes);
  std::vector<ExampleVotes> votes =
      CollectVotes(model, test.dataset, cfg.workers);
  out.Time("vote", clock.Lap());
  CertificationReport report =
      BuildCertificationReport(std::move(votes), model.cfg.num_groups,
                               cfg.MaxT(), WordMethods(cfg), cfg.workers);
  out.Time("certify", clock.Lap());
  if (WantsDpa(cfg)) {
    const InputFile train = LoadInput(cfg.train_path, "data-train");
    out.AddInput("train", train.bytes);
    AppendDpa(cfg, train.dataset, test.dataset, report);
    out.Time("dpa_baseline", clock.Lap());
  }
  std::string records = FormatReportRecords(report);
  if (cfg.verify) {
    records += VerifyCertificates(cfg, report);
    out.Time("verify", clock.Lap());
  }
  out.Write("certification.txt", FormatReportTable(report), true);
  out.Write("certification.tsv", records, true);
  out.Finish();
  log << FormatReportTable(report);
}

void CmdAttackEval(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("attack-eval", cfg);
  Stopwatch clock;
  const EnsembleModel model = ObtainEnsemble(cfg, out, clock);
  const InputFile test = LoadInput(cfg.test_path, "data-test");
  out.AddInput("test", test.bytes);
  const AttackSpec attack = cfg.Attack();
  const LabeledDataset backdoored =
      BuildBackdooredTestSet(test.dataset, attack, cfg.target);

  std::vector<int> clean(test.dataset.size());
  std::vector<int> triggered(backdoored.size());
  ParallelFor(clean.size(), cfg.workers, [&](std::size_t i) {
    clean[i] = PredictEnsemble(model, test.dataset.examples[i].text);
  });
  ParallelFor(triggered.size(), cfg.workers, [&](std::size_t i) {
    triggered[i] = PredictEnsemble(model, backdoored.examples[i].text);
  });
  Accuracy cacc{0, clean.size()};
  for (std::size_t i = 0; i < clean.size(); ++i) {
    cacc.correct += clean[i] == test.dataset.examples[i].label;
  }
  Accuracy asr{0, triggered.size()};
  for (int y : triggered) asr.correct += y == cfg.target;
  out.Time("evaluate", clock.Lap());

  std::string body = "cacc\t" + AccuracyCell(cacc) + "\nasr\t" +
                     AccuracyCell(asr) + "\n";
  if (model.mode == GroupingMode::kCertified) {
    const std::vector<CertificationMethod> methods = {
        CertificationMethod::kIndividual, CertificationMethod::kJoint};
    const CertificationReport report = BuildCertificationReport(
        CollectVotes(model, test.dataset, cfg.workers), model.cfg.num_groups,
        cfg.MaxT(), methods, cfg.workers);
    for (const CaEntry& e : report.table) {
      body += std::string("ca\t") + CertificationMethodName(e.method) + "\t" +
              std::to_string(e.t) + "\t" + AccuracyCell(e.accuracy) + "\n";
    }
    out.Time("certify", clock.Lap());
  }
  out.Write("metrics.tsv", body, true);
  out.Finish();
  log << body;
}

void CmdIdentifyTriggers(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("identify-triggers", cfg);
  Stopwatch clock;
  const InputFile train = LoadInput(cfg.train_path, "data-train");
  out.AddInput("train", train.bytes);
  const TriggerWordSet omega =
      IdentifyTriggerWords(train.dataset, cfg.TriggerId(), cfg.workers);
  out.Time("identify_triggers", clock.Lap());
  SaveWordSet(omega, (out.dir() / "omega.txt").string());
  out.Track("omega.txt");
  out.Finish();
  log << omega.size() << " potential trigger words\n";
}

void CmdCompare(const RunConfig& cfg, std::ostream& log) {
  RunOutput out("compare", cfg);
  Stopwatch clock;
  const InputFile train = LoadInput(cfg.train_path, "data-train");
  const InputFile test = LoadInput(cfg.test_path, "data-test");
  out.AddInput("train", train.bytes);
  out.AddInput("test", test.bytes);
  const EnsembleModel model =
      TrainEnsemble(train.dataset, cfg.Partition(), cfg.Learner(),
                    GroupingMode::kCertified, {}, cfg.workers);
  const int m = model.cfg.num_groups;
  const std::vector<ExampleVotes> word =
      CollectVotes(model, test.dataset, cfg.workers);
  out.Time("word_partition", clock.Lap());
  const DpaEnsemble dpa = TrainDpaEnsemble(
      train.dataset, cfg.dpa_partitions, cfg.Learner(), HashAlgorithm::kMd5,
      cfg.workers);
  const std::vector<ExampleVotes> sample =
      CollectDpaVotes(dpa, test.dataset, cfg.workers);
  out.Time("sample_partition", clock.Lap());

  std::set<int> sizes;
  for (int t = 0; t <= cfg.MaxT(); ++t) sizes.insert(t);
  for (int b : cfg.DpaBudgets()) sizes.insert(b);
  std::ostringstream table;
  table << "word-partition m=" << m << ", sample-partition P="
        << cfg.dpa_partitions << "\n";
  table << std::left << std::setw(6) << "size" << std::setw(14)
        << "individual" << std::setw(14) << "joint" << "dpa_baseline\n";
  std::ostringstream records;
  records << "#fields\tsize\tindividual\tjoint\tdpa_baseline\n";
  for (int s : sizes) {
    const Accuracy ind = IndividualCertifiedAccuracy(word, m, s);
    const Accuracy joint = s <= MeaningfulTriggerLimit(m)
                               ? JointCertifiedAccuracy(word, m, s, cfg.workers)
                               : Accuracy{0, word.size()};
    const Accuracy base = DpaCertifiedAccuracy(sample, s);
    table << std::left << std::setw(6) << s << std::setw(14)
          << Fixed(ind.value()) << std::setw(14) << Fixed(joint.value())
          << Fixed(base.value()) << "\n";
    records << s << '\t' << ind.correct << '/' << ind.total << '\t'
            << joint.correct << '/' << joint.total << '\t' << base.correct
            << '/' << base.total << '\n';
  }
  out.Time("certify", clock.Lap());
  out.Write("compare.txt", table.str(), true);
  out.Write("compare.tsv", records.str(), true);
  out.Finish();
  log << table.str();
}

using CommandFn = void (*)(const RunConfig&, std::ostream&);

const std::map<std::string, CommandFn>& Commands() {
  static const auto* commands = new std::map<std::string, CommandFn>{
      {"poison", CmdPoison},
      {"train", CmdTrain},
      {"predict", CmdPredict},
      {"certify", CmdCertify},
      {"attack-eval", CmdAttackEval},
      {"identify-triggers", CmdIdentifyTriggers},
      {"compare", CmdCompare},
  };
  return *commands;
}

const char* CommandHelp(const std::string& name) {
  if (name == "poison") return "Write the poisoned and certified training sets";
  if (name == "train") return "Train a word-partition ensemble";
  if (name == "predict") return "Predict a test set with an ensemble";
  if (name == "certify") return "Certified accuracy report";
  if (name == "attack-eval") return "Clean accuracy and attack success rate";
  if (name == "identify-triggers") return "Find potential trigger words";
  return "Word-partition versus sample-partition certificates";
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
      return kExitConfig;
    case ErrorCode::kBudget:
      return kExitBudget;
    default:
      return kExitData;
  }
}

const std::vector<std::string>& CommandNames() {
  static const auto* names = [] {
    auto* v = new std::vector<std::string>;
    for (const auto& [name, fn] : Commands()) v->push_back(name);
    return v;
  }();
  return *names;
}

void RunCommand(const std::string& command, const RunConfig& cfg,
                std::ostream& log) {
  const auto it = Commands().find(command);
  if (it == Commands().end()) {
    throw Error(ErrorCode::kConfig, "unknown command: " + command);
  }
  it->second(cfg, log);
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Certified defense against textual backdoor poisoning"};
  app.name("hashvote");
  RunConfig cfg;
  AddRunConfigOptions(app, cfg);
  for (const std::string& name : CommandNames()) {
    app.add_subcommand(name, CommandHelp(name))->fallthrough();
  }
  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }
  try {
    cfg.Validate();
    RunCommand(app.get_subcommands().front()->get_name(), cfg, out);
  } catch (const Error& e) {
    err << "hashvote: " << ErrorCodeName(e.code()) << ": " << e.what()
        << "\n";
    return ExitCodeFor(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "hashvote: io: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace hashvote::cli
