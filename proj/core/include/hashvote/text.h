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

#ifndef HASHVOTE_TEXT_H_
#define HASHVOTE_TEXT_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hashvote {

// Applies the token normalization rule (NFC, full lowercase, NFC again).
// Throws Error(kInputFormat) on invalid UTF-8.
std::string NormalizeSurface(std::string_view word);

// A single normalized word. Two tokens are equal iff their surfaces are
// byte-equal; ordering is lexicographic over the UTF-8 bytes, which is also
// the canonical word order used when sorting groups.
class Token {
 public:
  Token() = default;
  // Normalizes `word`. Normalization is idempotent.
  explicit Token(std::string_view word);

  // Wraps a surface that is already normalized. No checks are made.
  static Token FromNormalized(std::string surface);

  const std::string& surface() const { return surface_; }

  friend bool operator==(const Token&, const Token&) = default;
  friend std::strong_ordering operator<=>(const Token& a, const Token& b) {
    const int c = a.surface_.compare(b.surface_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater
                         : std::strong_ordering::equal;
  }

 private:
  std::string surface_;
};

// An ordered sequence of tokens.
class Text {
 public:
  Text() = default;
  explicit Text(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}
  // Each word is normalized into one token; no splitting is performed.
  Text(std::initializer_list<std::string_view> words);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  const std::vector<Token>& tokens() const { return tokens_; }
  std::vector<Token>& mutable_tokens() { return tokens_; }

  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  // Surfaces joined by single spaces.
  std::string Join() const;

  friend bool operator==(const Text&, const Text&) = default;

 private:
  std::vector<Token> tokens_;
};

// Tokenizes raw UTF-8 text: NFC, lowercase, split on Unicode white space,
// every punctuation code point becomes its own token, empty tokens dropped.
// Throws Error(kInputFormat) on invalid UTF-8.
Text Normalize(std::string_view raw_text);

// A duplicate-free set of words, iterated in canonical order.
class TriggerWordSet {
 public:
  TriggerWordSet() = default;
  explicit TriggerWordSet(std::set<Token> words) : words_(std::move(words)) {}
  TriggerWordSet(std::initializer_list<std::string_view> words);

  void Insert(Token word) { words_.insert(std::move(word)); }
  bool Contains(const Token& word) const { return words_.contains(word); }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::set<Token>& words() const { return words_; }

  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  friend bool operator==(const TriggerWordSet&, const TriggerWordSet&) = default;

 private:
  std::set<Token> words_;
};

// One word per line in canonical order, LF terminated.
void SaveWordSet(const TriggerWordSet& words, const std::string& path);
TriggerWordSet LoadWordSet(const std::string& path);

}  // namespace hashvote

#endif  // HASHVOTE_TEXT_H_
