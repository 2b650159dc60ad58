// Copyright 2026 The sgec-tools Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sgec/textnorm.h"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

namespace sgec {
namespace {

// Decodes one UTF-8 code point starting at `pos`. Returns the code point and
// advances `pos`. Invalid bytes decode as themselves (one byte at a time) so
// that arbitrary input never throws.
char32_t DecodeUtf8(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  int extra = 0;
  char32_t cp = lead;
  if (lead >= 0xF0 && lead <= 0xF4) {
    extra = 3;
    cp = lead & 0x07;
  } else if (lead >= 0xE0 && lead <= 0xEF) {
    extra = 2;
    cp = lead & 0x0F;
  } else if (lead >= 0xC2 && lead <= 0xDF) {
    extra = 1;
    cp = lead & 0x1F;
  }
  if (extra == 0 || pos + extra >= text.size()) {
    ++pos;
    return lead;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto next = static_cast<unsigned char>(text[pos + i]);
    if ((next & 0xC0) != 0x80) {
      ++pos;
      return lead;
    }
    cp = (cp << 6) | (next & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool IsStrippable(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '(': case ')':
      return true;
    default:
      return false;
  }
}

// UTF-8 encodings of U+2019 and U+2018.
constexpr std::string_view kRightSingleQuote = "\xE2\x80\x99";
constexpr std::string_view kLeftSingleQuote = "\xE2\x80\x98";

}  // namespace

Tokens SplitWhitespace(std::string_view text) {
  Tokens tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t start = pos;
    const char32_t cp = DecodeUtf8(text, pos);
    if (IsUnicodeSpace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text.substr(start, pos - start));
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenSequence Tokenize(std::string_view text, std::string utt_id) {
  return TokenSequence{std::move(utt_id), SplitWhitespace(text)};
}

std::string NormalizeToken(std::string_view token, const NormConfig& config) {
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size();) {
    if (config.unify_apostrophes &&
        (token.substr(i, 3) == kRightSingleQuote ||
         token.substr(i, 3) == kLeftSingleQuote)) {
      out.push_back('\'');
      i += 3;
      continue;
    }
    char c = token[i++];
    if (config.lowercase && c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  if (config.strip_punct) {
    std::size_t first = 0;
    std::size_t last = out.size();
    while (first < last && IsStrippable(out[first])) ++first;
    while (last > first && IsStrippable(out[last - 1])) --last;
    out = out.substr(first, last - first);
  }
  return out;
}

TokenSequence Normalize(const TokenSequence& seq, const NormConfig& config) {
  TokenSequence out{seq.utt_id, {}};
  out.tokens.reserve(seq.tokens.size());
  for (const auto& token : seq.tokens) {
    std::string norm = NormalizeToken(token, config);
    if (!norm.empty()) out.tokens.push_back(std::move(norm));
  }
  return out;
}

TokenSequence TokenizeNormalized(std::string_view text,
                                 const NormConfig& config,
                                 std::string utt_id) {
  return Normalize(Tokenize(text, std::move(utt_id)), config);
}

std::string Join(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace sgec
