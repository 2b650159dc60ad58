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

#include "sgec/confidence.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "sgec/error.h"

namespace sgec {
namespace {

using nlohmann::json;

bool InUnitInterval(double x) { return x >= 0.0 && x <= 1.0; }

[[noreturn]] void FormatAt(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kFormat,
              "confidence line " + std::to_string(line) + ": " + what);
}

struct SideStats {
  double avg = 0.0;
  double min = 0.0;
};

SideStats Stats(const ConfidencedSequence& seq, Span span) {
  double sum = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = span.begin; k < span.end; ++k) {
    sum += seq.tokens[k].conf;
    lowest = std::min(lowest, seq.tokens[k].conf);
  }
  return {sum / static_cast<double>(span.size()), lowest};
}

}  // namespace

Tokens ConfidencedSequence::words() const {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::vector<ConfidenceEntry> ParseConfidenceJsonl(std::string_view content) {
  std::vector<ConfidenceEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      FormatAt(line_no, e.what());
    }
    if (!doc.is_object() || !doc.contains("utt_id") ||
        !doc["utt_id"].is_string() || !doc.contains("tokens") ||
        !doc["tokens"].is_array()) {
      FormatAt(line_no, "expected {\"utt_id\": string, \"tokens\": array}");
    }
    ConfidenceEntry entry;
    entry.utt_id = doc["utt_id"].get<std::string>();
    for (const auto& tok : doc["tokens"]) {
      if (!tok.is_object() || !tok.contains("t") || !tok["t"].is_string() ||
          !tok.contains("c") || !tok["c"].is_number()) {
        FormatAt(line_no, "token entries need string \"t\" and number \"c\"");
      }
      const double conf = tok["c"].get<double>();
      if (!InUnitInterval(conf)) FormatAt(line_no, "confidence outside [0, 1]");
      entry.tokens.push_back({tok["t"].get<std::string>(), conf});
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string WriteConfidenceJsonl(std::span<const ConfidenceEntry> entries) {
  std::string out;
  for (const auto& entry : entries) {
    json tokens = json::array();
    for (const auto& t : entry.tokens) {
      tokens.push_back({{"t", t.text}, {"c", t.conf}});
    }
    json doc = {{"utt_id", entry.utt_id}, {"tokens", std::move(tokens)}};
    out += doc.dump();
    out += '\n';
  }
  return out;
}

ConfidencedSequence AttachConfidence(const TokenSequence& seq,
                                     const ConfidenceEntry& entry,
                                     const NormConfig& config) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::kAlignment,
                 "utterance '" + seq.utt_id + "': " + why);
  };
  if (entry.utt_id != seq.utt_id) {
    throw fail("confidence entry is for '" + entry.utt_id + "'");
  }

  std::vector<ScoredToken> pieces;
  for (const auto& raw : entry.tokens) {
    for (const auto& part : SplitWhitespace(raw.text)) {
      std::string norm = NormalizeToken(part, config);
      if (!norm.empty()) pieces.push_back({std::move(norm), raw.conf});
    }
  }

  ConfidencedSequence out{seq.utt_id, {}};
  out.tokens.reserve(seq.tokens.size());
  std::size_t next = 0;
  for (const auto& word : seq.tokens) {
    std::string acc;
    double conf = std::numeric_limits<double>::infinity();
    while (acc.size() < word.size() && next < pieces.size()) {
      acc += pieces[next].text;
      conf = std::min(conf, pieces[next].conf);
      ++next;
      if (word.compare(0, acc.size(), acc) != 0) break;
    }
    if (acc != word) {
      throw fail("cannot reconcile confidence tokens with transcript word '" +
                 word + "'");
    }
    out.tokens.push_back({word, conf});
  }
  if (next != pieces.size()) {
    throw fail(std::to_string(pieces.size() - next) +
               " confidence token(s) left over after the transcript");
  }
  return out;
}

ConfidenceEntry DetachConfidence(const ConfidencedSequence& seq) {
  return ConfidenceEntry{seq.utt_id, seq.tokens};
}

ConfidencedSequence UniformConfidence(const TokenSequence& seq, double conf) {
  ConfidencedSequence out{seq.utt_id, {}};
  for (const auto& t : seq.tokens) out.tokens.push_back({t, conf});
  return out;
}

std::string_view ConfidenceModeName(ConfidenceMode mode) {
  switch (mode) {
    case ConfidenceMode::kFltAvg:
      return "flt_avg";
    case ConfidenceMode::kFltMin:
      return "flt_min";
    case ConfidenceMode::kGecAvg:
      return "gec_avg";
    case ConfidenceMode::kGecMin:
      return "gec_min";
    case ConfidenceMode::kAvg:
      return "avg";
    case ConfidenceMode::kMin:
      return "min";
  }
  return "?";
}

std::optional<ConfidenceMode> ParseConfidenceMode(std::string_view name) {
  for (auto mode : {ConfidenceMode::kFltAvg, ConfidenceMode::kFltMin,
                    ConfidenceMode::kGecAvg, ConfidenceMode::kGecMin,
                    ConfidenceMode::kAvg, ConfidenceMode::kMin}) {
    if (ConfidenceModeName(mode) == name) return mode;
  }
  return std::nullopt;
}

bool UsesFltSide(ConfidenceMode mode) {
  return mode != ConfidenceMode::kGecAvg && mode != ConfidenceMode::kGecMin;
}

bool UsesGecSide(ConfidenceMode mode) {
  return mode != ConfidenceMode::kFltAvg && mode != ConfidenceMode::kFltMin;
}

void FilterPolicy::Validate() const {
  if (!InUnitInterval(threshold)) {
    throw Error(ErrorCode::kValidation, "threshold must lie in [0, 1]");
  }
  if (!InUnitInterval(default_fill)) {
    throw Error(ErrorCode::kValidation, "default fill must lie in [0, 1]");
  }
}

double EditConfidence(const Edit& edit, const ConfidencedSequence& flt,
                      const ConfidencedSequence& gec, Span gec_span,
                      const FilterPolicy& policy) {
  if (edit.src.begin > edit.src.end || edit.src.end > flt.size()) {
    throw Error(ErrorCode::kStructural, "utterance '" + flt.utt_id +
                                            "': fluent span out of range");
  }
  if (gec_span.begin > gec_span.end || gec_span.end > gec.size()) {
    throw Error(ErrorCode::kStructural, "utterance '" + gec.utt_id +
                                            "': correction span out of range");
  }
  const bool want_flt = edit.kind != EditKind::kMissing;
  const bool want_gec = edit.kind != EditKind::kUnnecessary;
  if (want_flt == edit.src.empty() || want_gec == gec_span.empty()) {
    throw Error(ErrorCode::kStructural,
                "utterance '" + flt.utt_id + "': " +
                    std::string(1, EditKindCode(edit.kind)) +
                    " edit with inconsistent span sides");
  }

  const SideStats fill{policy.default_fill, policy.default_fill};
  const SideStats a = want_flt ? Stats(flt, edit.src) : fill;
  const SideStats b = want_gec ? Stats(gec, gec_span) : fill;
  switch (policy.mode) {
    case ConfidenceMode::kFltAvg:
      return a.avg;
    case ConfidenceMode::kFltMin:
      return a.min;
    case ConfidenceMode::kGecAvg:
      return b.avg;
    case ConfidenceMode::kGecMin:
      return b.min;
    case ConfidenceMode::kAvg:
      return 0.5 * (a.avg + b.avg);
    case ConfidenceMode::kMin:
      return std::min(a.min, b.min);
  }
  return 0.0;
}

void ScoreEdits(EditSet& set, const ConfidencedSequence& flt,
                const ConfidencedSequence& gec, const FilterPolicy& policy) {
  if (flt.words() != set.source) {
    throw Error(ErrorCode::kAlignment,
                "utterance '" + set.utt_id +
                    "': fluent confidences do not match the edit source");
  }
  if (gec.words() != ApplyEdits(set).tokens) {
    throw Error(ErrorCode::kAlignment,
                "utterance '" + set.utt_id +
                    "': correction-side confidences do not match the "
                    "corrected sequence");
  }
  const std::vector<Span> spans = CorrectionSpans(set);
  for (std::size_t i = 0; i < set.edits.size(); ++i) {
    Edit& edit = set.edits[i];
    const Span span = spans[i];
    edit.confidence = EditConfidence(edit, flt, gec, span, policy);
  }
}

EditSet FilterEdits(const EditSet& set, const FilterPolicy& policy) {
  EditSet out{set.utt_id, set.source, {}};
  for (std::size_t i = 0; i < set.edits.size(); ++i) {
    const Edit& edit = set.edits[i];
    if (!edit.confidence) {
      throw Error(ErrorCode::kValidation,
                  "utterance '" + set.utt_id + "': edit " + std::to_string(i) +
                      " has no confidence");
    }
    if (*edit.confidence >= policy.threshold) out.edits.push_back(edit);
  }
  return out;
}

}  // namespace sgec
