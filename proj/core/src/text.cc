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

#include "hashvote/text.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <fstream>
#include <sstream>

#include "hashvote/error.h"

namespace hashvote {
namespace {

void CheckUtf8(std::string_view bytes) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
  const auto length = static_cast<std::int32_t>(bytes.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) {
      throw Error(ErrorCode::kInputFormat,
                  "invalid UTF-8 at byte offset " + std::to_string(at));
    }
  }
}

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw Error(ErrorCode::kInputFormat, "ICU NFC normalizer unavailable");
  }
  return *nfc;
}

icu::UnicodeString NormalizeUnicode(std::string_view bytes) {
  CheckUtf8(bytes);
  const icu::Normalizer2& nfc = Nfc();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text = nfc.normalize(
      icu::UnicodeString::fromUTF8(
          icu::StringPiece(bytes.data(), static_cast<std::int32_t>(bytes.size()))),
      status);
  text.toLower(icu::Locale::getRoot());
  text = nfc.normalize(text, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInputFormat, "normalization failed");
  }
  return text;
}

std::string ToUtf8(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

}  // namespace

std::string NormalizeSurface(std::string_view word) {
  return ToUtf8(NormalizeUnicode(word));
}

Token::Token(std::string_view word) : surface_(NormalizeSurface(word)) {}

Token Token::FromNormalized(std::string surface) {
  Token token;
  token.surface_ = std::move(surface);
  return token;
}

Text::Text(std::initializer_list<std::string_view> words) {
  tokens_.reserve(words.size());
  for (std::string_view w : words) tokens_.emplace_back(w);
}

std::string Text::Join() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens_[i].surface();
  }
  return out;
}

Text Normalize(std::string_view raw_text) {
  const icu::UnicodeString text = NormalizeUnicode(raw_text);
  std::vector<Token> tokens;
  icu::UnicodeString current;
  auto flush = [&] {
    if (!current.isEmpty()) {
      tokens.push_back(Token::FromNormalized(ToUtf8(current)));
      current.remove();
    }
  };
  for (std::int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      flush();
    } else if (u_ispunct(c)) {
      flush();
      current.append(c);
      flush();
    } else {
      current.append(c);
    }
  }
  flush();
  return Text(std::move(tokens));
}

TriggerWordSet::TriggerWordSet(std::initializer_list<std::string_view> words) {
  for (std::string_view w : words) words_.emplace(w);
}

void SaveWordSet(const TriggerWordSet& words, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (const Token& w : words) out << w.surface() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

TriggerWordSet LoadWordSet(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  TriggerWordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.Insert(Token(line));
  }
  return words;
}

}  // namespace hashvote
