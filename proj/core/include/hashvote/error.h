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

#ifndef HASHVOTE_ERROR_H_
#define HASHVOTE_ERROR_H_

#include <stdexcept>
#include <string>

namespace hashvote {

enum class ErrorCode {
  kInputFormat,       // invalid UTF-8 or otherwise unreadable text
  kParse,             // malformed line in a dataset or config file
  kSchema,            // well-formed but out-of-range content (labels, keys)
  kConfig,            // invalid configuration value
  kTraining,          // learner could not be trained
  kAttackInfeasible,  // no example is eligible for the requested poisoning
  kBudget,            // exhaustive enumeration would exceed its budget
  kIo,                // file system failure
  kIntegrity,         // persisted artifact failed its digest check
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets the CLI map failures onto process exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hashvote

#endif  // HASHVOTE_ERROR_H_
