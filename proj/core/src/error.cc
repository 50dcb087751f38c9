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

#include "hashvote/error.h"

namespace hashvote {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInputFormat: return "input-format";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kTraining: return "training";
    case ErrorCode::kAttackInfeasible: return "attack-infeasible";
    case ErrorCode::kBudget: return "budget";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kIntegrity: return "integrity";
  }
  return "unknown";
}

}  // namespace hashvote
