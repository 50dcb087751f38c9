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

#ifndef HASHVOTE_DIGEST_H_
#define HASHVOTE_DIGEST_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hashvote {

// kMock is only meaningful for word-to-group assignment, where an explicit
// table replaces the digest. Every other digest consumer treats it as kSha256.
enum class HashAlgorithm { kMd5, kSha1, kSha256, kMock };

const char* HashAlgorithmName(HashAlgorithm algorithm);
// Accepts "md5", "sha1", "sha256" and "mock". Throws Error(kConfig) otherwise.
HashAlgorithm ParseHashAlgorithm(std::string_view name);

std::vector<std::uint8_t> Digest(HashAlgorithm algorithm, std::string_view bytes);

// The first eight digest bytes read as a big-endian unsigned integer.
std::uint64_t DigestPrefix64(HashAlgorithm algorithm, std::string_view bytes);

std::string HexDigest(HashAlgorithm algorithm, std::string_view bytes);

// Child seed for (seed, tag); distinct tags give unrelated streams.
std::uint64_t DeriveSeed(HashAlgorithm algorithm, std::uint64_t seed,
                         std::string_view tag);

}  // namespace hashvote

#endif  // HASHVOTE_DIGEST_H_
