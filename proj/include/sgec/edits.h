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

#ifndef SGEC_EDITS_H_
#define SGEC_EDITS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgec/types.h"

namespace sgec {

// R: both sides non-empty. M: source side empty (the correction inserts).
// U: correction side empty (the correction deletes).
enum class EditKind { kReplace, kMissing, kUnnecessary };

char EditKindCode(EditKind kind);
std::optional<EditKind> EditKindFromCode(std::string_view code);

struct Edit {
  EditKind kind = EditKind::kReplace;
  // Over the fluent (source) sequence. M edits carry a zero-length span; the
  // index is the insertion point ("insert before token i", i may equal the
  // source length).
  Span src;
  Tokens src_text;
  Tokens corr_text;
  std::optional<double> confidence;

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct EditSet {
  std::string utt_id;
  Tokens source;
  // Sorted by source position, non-overlapping.
  std::vector<Edit> edits;

  friend bool operator==(const EditSet&, const EditSet&) = default;
};

// One edit per maximal run of non-equal opcodes in Align(fluent, corrected).
// Runs mixing kinds become a single R edit.
EditSet ExtractEdits(const TokenSequence& fluent,
                     const TokenSequence& corrected);

// Throws Error(kStructural) when spans are out of bounds, overlap, are out of
// order, disagree with src_text, or contradict the edit kind. Confidences
// must lie in [0, 1].
void ValidateEditSet(const EditSet& set);

// Returns the corrected sequence (carrying set.utt_id).
TokenSequence ApplyEdits(const EditSet& set);

// Location of each edit's correction inside ApplyEdits(set), in edit order.
// U edits map to a zero-length span at the deletion point.
std::vector<Span> CorrectionSpans(const EditSet& set);

// M2-style serialization. Each utterance is an "S" line followed by one "A"
// line per edit; utterances are separated by one blank line. The format
// carries no utterance ids, so ParseM2 names sets by their 0-based position.
// Confidences are not serialized.
std::string WriteM2(std::span<const EditSet> sets);
std::vector<EditSet> ParseM2(std::string_view content);

}  // namespace sgec

#endif  // SGEC_EDITS_H_
