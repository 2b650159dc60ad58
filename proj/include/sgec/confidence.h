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

#ifndef SGEC_CONFIDENCE_H_
#define SGEC_CONFIDENCE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgec/edits.h"
#include "sgec/textnorm.h"
#include "sgec/types.h"

namespace sgec {

struct ScoredToken {
  std::string text;
  double conf = 1.0;

  friend bool operator==(const ScoredToken&, const ScoredToken&) = default;
};

// One line of a token-confidence file, tokens as emitted upstream.
struct ConfidenceEntry {
  std::string utt_id;
  std::vector<ScoredToken> tokens;

  friend bool operator==(const ConfidenceEntry&,
                         const ConfidenceEntry&) = default;
};

// Normalized tokens with one confidence each.
struct ConfidencedSequence {
  std::string utt_id;
  std::vector<ScoredToken> tokens;

  Tokens words() const;
  std::size_t size() const { return tokens.size(); }

  friend bool operator==(const ConfidencedSequence&,
                         const ConfidencedSequence&) = default;
};

// JSON lines: {"utt_id": "...", "tokens": [{"t": "...", "c": 0.9}, ...]}.
// Throws Error(kFormat) with a line number on malformed input and on
// confidences outside [0, 1].
std::vector<ConfidenceEntry> ParseConfidenceJsonl(std::string_view content);
std::string WriteConfidenceJsonl(std::span<const ConfidenceEntry> entries);

// Pairs a normalized transcript with raw confidence tokens. Raw tokens are
// normalized with `config`; tokens that normalize to nothing are discarded,
// and consecutive raw pieces that concatenate to one transcript token are
// merged, taking the minimum confidence. Throws Error(kAlignment) naming the
// utterance when the two cannot be reconciled.
ConfidencedSequence AttachConfidence(const TokenSequence& seq,
                                     const ConfidenceEntry& entry,
                                     const NormConfig& config);

ConfidenceEntry DetachConfidence(const ConfidencedSequence& seq);

// A sequence where every token has the same confidence.
ConfidencedSequence UniformConfidence(const TokenSequence& seq, double conf);

enum class ConfidenceMode { kFltAvg, kFltMin, kGecAvg, kGecMin, kAvg, kMin };

std::string_view ConfidenceModeName(ConfidenceMode mode);
std::optional<ConfidenceMode> ParseConfidenceMode(std::string_view name);
bool UsesFltSide(ConfidenceMode mode);
bool UsesGecSide(ConfidenceMode mode);

struct FilterPolicy {
  ConfidenceMode mode = ConfidenceMode::kAvg;
  double threshold = 0.0;
  // Stand-in confidence for the side an M or U edit does not have.
  double default_fill = 1.0;

  // Throws Error(kValidation) when threshold or default_fill is outside
  // [0, 1].
  void Validate() const;
};

// Edit confidence under `policy.mode`.
//
//   flt_avg = mean(a[src])          flt_min = min(a[src])
//   gec_avg = mean(b[gec_span])     gec_min = min(b[gec_span])
//   avg     = (flt_avg + gec_avg) / 2
//   min     = min(flt_min, gec_min)
//
// where a are fluent-side and b correction-side token confidences. An M edit
// has no fluent tokens and a U edit no correction tokens; the missing side
// contributes default_fill as both its mean and its minimum.
double EditConfidence(const Edit& edit, const ConfidencedSequence& flt,
                      const ConfidencedSequence& gec, Span gec_span,
                      const FilterPolicy& policy);

// Sets edit.confidence for every edit of `set`. `flt` must match set.source
// and `gec` must match ApplyEdits(set); correction spans are located with
// CorrectionSpans.
void ScoreEdits(EditSet& set, const ConfidencedSequence& flt,
                const ConfidencedSequence& gec, const FilterPolicy& policy);

// Keeps edits whose confidence is >= policy.threshold. Throws
// Error(kValidation) when an edit has no confidence.
EditSet FilterEdits(const EditSet& set, const FilterPolicy& policy);

}  // namespace sgec

#endif  // SGEC_CONFIDENCE_H_
