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

#ifndef SGEC_ALIGN_H_
#define SGEC_ALIGN_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgec/types.h"

namespace sgec {

// Opcode kinds are oriented source -> target: kIns covers tokens present only
// in the target, kDel tokens present only in the source.
enum class OpKind { kEqual, kSub, kIns, kDel };

std::string_view OpKindName(OpKind kind);

struct AlignmentOp {
  OpKind kind = OpKind::kEqual;
  Span src;
  Span tgt;

  friend bool operator==(const AlignmentOp&, const AlignmentOp&) = default;
};

// Ordered opcodes whose spans partition both sequences. Adjacent opcodes never
// share a kind.
using AlignmentOpList = std::vector<AlignmentOp>;

// Unit-cost word-level Levenshtein alignment. On equal-cost paths the
// backtrace prefers equal, then sub, then del, then ins, so the result is a
// function of token content only.
AlignmentOpList Align(std::span<const std::string> src,
                      std::span<const std::string> tgt);

inline AlignmentOpList Align(const TokenSequence& src,
                             const TokenSequence& tgt) {
  return Align(src.tokens, tgt.tokens);
}

// Number of tokens touched by non-equal opcodes (a sub run of length n
// costs n).
std::size_t AlignmentCost(const AlignmentOpList& ops);

struct EditCounts {
  std::size_t subs = 0;
  std::size_t dels = 0;
  std::size_t ins = 0;
  std::size_t hits = 0;

  std::size_t errors() const { return subs + dels + ins; }

  EditCounts& operator+=(const EditCounts& other);
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

EditCounts CountEdits(const AlignmentOpList& ops);
EditCounts CountEdits(std::span<const std::string> src,
                      std::span<const std::string> tgt);

struct WerReport {
  EditCounts counts;
  std::size_t ref_length = 0;
  // Empty when the reference is empty but the hypothesis is not.
  std::optional<double> rate;
};

// Reference is the alignment source, hypothesis the target.
WerReport Wer(std::span<const std::string> ref,
              std::span<const std::string> hyp);

// Corpus-level rate from summed counts.
WerReport CombineWer(std::span<const WerReport> reports);

}  // namespace sgec

#endif  // SGEC_ALIGN_H_
