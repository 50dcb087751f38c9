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

#ifndef HASHVOTE_TOOLS_CLI_COMMANDS_H_
#define HASHVOTE_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/run_config.h"
#include "hashvote/error.h"

namespace hashvote::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBudget = 4;

int ExitCodeFor(ErrorCode code);

// Command names accepted by RunCommand.
const std::vector<std::string>& CommandNames();

// Runs one command against a validated config; writes into cfg.output_dir.
// Throws Error on failure.
void RunCommand(const std::string& command, const RunConfig& cfg,
                std::ostream& log);

// Full command-line entry point; returns the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace hashvote::cli

#endif  // HASHVOTE_TOOLS_CLI_COMMANDS_H_
