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

#ifndef SGEC_TEXTNORM_H_
#define SGEC_TEXTNORM_H_

#include <span>
#include <string>
#include <string_view>

#include "sgec/types.h"

namespace sgec {

// Preprocessing applied identically to hypotheses, references and
// confidence-file tokens before any alignment.
struct NormConfig {
  bool lowercase = true;
  bool strip_punct = true;
  bool unify_apostrophes = true;
};

// Splits on Unicode whitespace (UTF-8 input). Runs of whitespace collapse.
Tokens SplitWhitespace(std::string_view text);

TokenSequence Tokenize(std::string_view text, std::string utt_id = {});

// Normalizes a single token. The result may be empty when the token consisted
// only of strippable punctuation; callers drop such tokens.
//
// Steps, in order: U+2019/U+2018 become ASCII apostrophes, ASCII letters are
// lowercased, and leading/trailing characters from `.,;:!?"()` are removed.
// Internal punctuation (hyphens, apostrophes) is preserved.
std::string NormalizeToken(std::string_view token, const NormConfig& config);

// Applies NormalizeToken to every token and drops the ones that end up empty.
// Idempotent; never increases the token count.
TokenSequence Normalize(const TokenSequence& seq, const NormConfig& config);

// Tokenize followed by Normalize.
TokenSequence TokenizeNormalized(std::string_view text,
                                 const NormConfig& config,
                                 std::string utt_id = {});

std::string Join(std::span<const std::string> tokens);
inline std::string Detokenize(const TokenSequence& seq) {
  return Join(seq.tokens);
}

}  // namespace sgec

#endif  // SGEC_TEXTNORM_H_
