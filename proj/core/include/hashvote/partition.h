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

#ifndef HASHVOTE_PARTITION_H_
#define HASHVOTE_PARTITION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hashvote/digest.h"
#include "hashvote/text.h"

namespace hashvote {

// Word-to-group assignment parameters.
struct PartitionConfig {
  int num_groups = 1;
  HashAlgorithm hash = HashAlgorithm::kMd5;
  // Only consulted when hash == kMock. Keys are normalized surfaces and
  // values are group indices in [1, num_groups].
  std::optional<std::map<std::string, int>> mock_table;

  // Throws Error(kConfig) if the config is unusable.
  void Validate() const;

  static PartitionConfig Mock(int num_groups,
                              std::map<std::string, int> table);

  friend bool operator==(const PartitionConfig&,
                         const PartitionConfig&) = default;
};

// 1-based group index of `word`: DigestPrefix64(word) % m + 1, or the mock
// table entry. Throws Error(kConfig) when a mock table lacks the word.
int HashGroup(const Token& word, const PartitionConfig& cfg);

// Total order key used to sort words inside a group.
inline std::string_view CanonicalWordId(const Token& word) {
  return word.surface();
}

enum class GroupingMode {
  kCertified,  // hash-disjoint groups sorted by word id
  kSemantic,   // only trigger candidates are confined; order kept
};

const char* GroupingModeName(GroupingMode mode);
GroupingMode ParseGroupingMode(std::string_view name);

struct TextGroups {
  GroupingMode mode = GroupingMode::kCertified;
  // groups[j - 1] holds g^j for group index j.
  std::vector<Text> groups;

  const Text& group(int index) const { return groups.at(index - 1); }
  friend bool operator==(const TextGroups&, const TextGroups&) = default;
};

// Certified division. Each token lands in exactly one group and every group
// is sorted by CanonicalWordId, so the result does not depend on token order.
TextGroups DivideText(const Text& text, const PartitionConfig& cfg);

// Semantic-preserving division: words in `confined` go to their hash group
// only, all other words are copied into every group, and each group keeps
// the original relative order.
TextGroups DivideTextSemantic(const Text& text, const PartitionConfig& cfg,
                              const TriggerWordSet& confined);

}  // namespace hashvote

#endif  // HASHVOTE_PARTITION_H_
