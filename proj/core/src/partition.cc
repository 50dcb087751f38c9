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

#include "hashvote/partition.h"

#include <algorithm>

#include "hashvote/error.h"

namespace hashvote {

void PartitionConfig::Validate() const {
  if (num_groups < 1) {
    throw Error(ErrorCode::kConfig, "group count m must be >= 1, got " +
                                        std::to_string(num_groups));
  }
  if (hash == HashAlgorithm::kMock) {
    if (!mock_table) {
      throw Error(ErrorCode::kConfig, "mock hash requires a mock table");
    }
    for (const auto& [word, group] : *mock_table) {
      if (group < 1 || group > num_groups) {
        throw Error(ErrorCode::kConfig, "mock table maps '" + word +
                                            "' outside [1, m]");
      }
    }
  }
}

PartitionConfig PartitionConfig::Mock(int num_groups,
                                      std::map<std::string, int> table) {
  PartitionConfig cfg;
  cfg.num_groups = num_groups;
  cfg.hash = HashAlgorithm::kMock;
  std::map<std::string, int> normalized;
  for (auto& [word, group] : table) normalized[NormalizeSurface(word)] = group;
  cfg.mock_table = std::move(normalized);
  return cfg;
}

int HashGroup(const Token& word, const PartitionConfig& cfg) {
  if (cfg.hash == HashAlgorithm::kMock) {
    if (cfg.mock_table) {
      auto it = cfg.mock_table->find(word.surface());
      if (it != cfg.mock_table->end()) return it->second;
    }
    throw Error(ErrorCode::kConfig,
                "mock table has no entry for '" + word.surface() + "'");
  }
  const std::uint64_t h = DigestPrefix64(cfg.hash, word.surface());
  return static_cast<int>(h % static_cast<std::uint64_t>(cfg.num_groups)) + 1;
}

const char* GroupingModeName(GroupingMode mode) {
  return mode == GroupingMode::kCertified ? "certified" : "semantic";
}

GroupingMode ParseGroupingMode(std::string_view name) {
  if (name == "certified") return GroupingMode::kCertified;
  if (name == "semantic") return GroupingMode::kSemantic;
  throw Error(ErrorCode::kConfig,
              "unknown grouping mode '" + std::string(name) + "'");
}

TextGroups DivideText(const Text& text, const PartitionConfig& cfg) {
  std::vector<std::vector<Token>> buckets(cfg.num_groups);
  for (const Token& token : text) {
    buckets[HashGroup(token, cfg) - 1].push_back(token);
  }
  TextGroups result;
  result.mode = GroupingMode::kCertified;
  result.groups.reserve(buckets.size());
  for (auto& bucket : buckets) {
    std::sort(bucket.begin(), bucket.end(),
              [](const Token& a, const Token& b) {
                return CanonicalWordId(a) < CanonicalWordId(b);
              });
    result.groups.emplace_back(std::move(bucket));
  }
  return result;
}

TextGroups DivideTextSemantic(const Text& text, const PartitionConfig& cfg,
                              const TriggerWordSet& confined) {
  std::vector<std::vector<Token>> buckets(cfg.num_groups);
  for (const Token& token : text) {
    if (confined.Contains(token)) {
      buckets[HashGroup(token, cfg) - 1].push_back(token);
    } else {
      for (auto& bucket : buckets) bucket.push_back(token);
    }
  }
  TextGroups result;
  result.mode = GroupingMode::kSemantic;
  result.groups.reserve(buckets.size());
  for (auto& bucket : buckets) result.groups.emplace_back(std::move(bucket));
  return result;
}

}  // namespace hashvote
