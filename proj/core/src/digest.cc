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

#include "hashvote/digest.h"

#include <openssl/evp.h>

#include <cstdio>

#include "hashvote/error.h"

namespace hashvote {

const char* HashAlgorithmName(HashAlgorithm algorithm) {
  switch (algorithm) {
    case HashAlgorithm::kMd5: return "md5";
    case HashAlgorithm::kSha1: return "sha1";
    case HashAlgorithm::kSha256: return "sha256";
    case HashAlgorithm::kMock: return "mock";
  }
  return "unknown";
}

HashAlgorithm ParseHashAlgorithm(std::string_view name) {
  if (name == "md5") return HashAlgorithm::kMd5;
  if (name == "sha1") return HashAlgorithm::kSha1;
  if (name == "sha256") return HashAlgorithm::kSha256;
  if (name == "mock") return HashAlgorithm::kMock;
  throw Error(ErrorCode::kConfig,
              "unknown hash algorithm '" + std::string(name) + "'");
}

std::vector<std::uint8_t> Digest(HashAlgorithm algorithm,
                                 std::string_view bytes) {
  const EVP_MD* md = nullptr;
  switch (algorithm) {
    case HashAlgorithm::kMd5: md = EVP_md5(); break;
    case HashAlgorithm::kSha1: md = EVP_sha1(); break;
    case HashAlgorithm::kSha256:
    case HashAlgorithm::kMock: md = EVP_sha256(); break;
  }
  std::vector<std::uint8_t> out(EVP_MAX_MD_SIZE);
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &length, md,
                 nullptr) != 1) {
    throw Error(ErrorCode::kConfig, "digest computation failed");
  }
  out.resize(length);
  return out;
}

std::uint64_t DigestPrefix64(HashAlgorithm algorithm, std::string_view bytes) {
  const std::vector<std::uint8_t> digest = Digest(algorithm, bytes);
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value = (value << 8) | digest[i];
  return value;
}

std::string HexDigest(HashAlgorithm algorithm, std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (std::uint8_t b : Digest(algorithm, bytes)) {
    hex.push_back(kHex[b >> 4]);
    hex.push_back(kHex[b & 0xf]);
  }
  return hex;
}

std::uint64_t DeriveSeed(HashAlgorithm algorithm, std::uint64_t seed,
                         std::string_view tag) {
  std::string material = std::to_string(seed);
  material.push_back(':');
  material.append(tag);
  return DigestPrefix64(algorithm, material);
}

}  // namespace hashvote
