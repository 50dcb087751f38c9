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

#ifndef HASHVOTE_TESTS_SUPPORT_ADVERSARY_ORACLE_H_
#define HASHVOTE_TESTS_SUPPORT_ADVERSARY_ORACLE_H_

#include <cstddef>
#include <vector>

namespace hashvote::testing {

// One test input as seen by the oracle: ground truth and the label emitted by
// each group's base model.
struct OracleInput {
  int truth = 1;
  std::vector<int> group_labels;
};

// Plain adversarial simulation, written independently of the library: for
// every corruption set of size t and every relabelling of its groups, the
// tie-broken plurality must still equal the truth. Returns the minimum over
// corruption sets of the number of inputs that survive every relabelling.
std::size_t BruteForceJointCorrect(const std::vector<OracleInput>& inputs,
                                   int num_classes, int t);

// Same simulation, per input, with the corruption set chosen per input and
// of any size up to t.
std::size_t BruteForceIndividualCorrect(const std::vector<OracleInput>& inputs,
                                        int num_classes, int t);

}  // namespace hashvote::testing

#endif  // HASHVOTE_TESTS_SUPPORT_ADVERSARY_ORACLE_H_
