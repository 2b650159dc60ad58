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

#include "sgec/edits.h"

#include <charconv>
#include <cstddef>
#include <string>
#include <utility>

#include "sgec/align.h"
#include "sgec/error.h"
#include "sgec/textnorm.h"

namespace sgec {
namespace {

constexpr std::string_view kNone = "-NONE-";
constexpr std::string_view kFieldSep = "|||";

Tokens Slice(const Tokens& tokens, Span span) {
  return Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(span.begin),
                tokens.begin() + static_cast<std::ptrdiff_t>(span.end));
}

EditKind KindForSides(bool src_empty, bool corr_empty) {
  if (src_empty) return EditKind::kMissing;
  if (corr_empty) return EditKind::kUnnecessary;
  return EditKind::kReplace;
}

[[noreturn]] void Structural(const EditSet& set, const std::string& what) {
  throw Error(ErrorCode::kStructural,
              "utterance '" + set.utt_id + "': " + what);
}

[[noreturn]] void FormatAt(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kFormat,
              "m2 line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(kFieldSep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + kFieldSep.size();
  }
}

bool ParseIndex(std::string_view text, std::size_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, out);
  return result.ec == std::errc() && result.ptr == end;
}

// Splits on single spaces; the M2 writer never emits other separators.
Tokens SplitSpaces(std::string_view text) {
  Tokens tokens;
  if (text.empty()) return tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(' ', start);
    tokens.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return tokens;
    start = pos + 1;
  }
}

}  // namespace

char EditKindCode(EditKind kind) {
  switch (kind) {
    case EditKind::kReplace:
      return 'R';
    case EditKind::kMissing:
      return 'M';
    case EditKind::kUnnecessary:
      return 'U';
  }
  return '?';
}

std::optional<EditKind> EditKindFromCode(std::string_view code) {
  if (code == "R") return EditKind::kReplace;
  if (code == "M") return EditKind::kMissing;
  if (code == "U") return EditKind::kUnnecessary;
  return std::nullopt;
}

EditSet ExtractEdits(const TokenSequence& fluent,
                     const TokenSequence& corrected) {
  EditSet set{fluent.utt_id, fluent.tokens, {}};
  const AlignmentOpList ops = Align(fluent.tokens, corrected.tokens);
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == OpKind::kEqual) {
      ++k;
      continue;
    }
    Span src = ops[k].src;
    Span tgt = ops[k].tgt;
    while (k < ops.size() && ops[k].kind != OpKind::kEqual) {
      src.end = ops[k].src.end;
      tgt.end = ops[k].tgt.end;
      ++k;
    }
    Edit edit;
    edit.kind = KindForSides(src.empty(), tgt.empty());
    edit.src = src;
    edit.src_text = Slice(fluent.tokens, src);
    edit.corr_text = Slice(corrected.tokens, tgt);
    set.edits.push_back(std::move(edit));
  }
  return set;
}

void ValidateEditSet(const EditSet& set) {
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < set.edits.size(); ++i) {
    const Edit& e = set.edits[i];
    const std::string where = "edit " + std::to_string(i) + ": ";
    if (e.src.begin > e.src.end || e.src.end > set.source.size()) {
      Structural(set, where + "span out of range");
    }
    if (e.src.begin < cursor) {
      Structural(set, where + "overlaps or precedes the previous edit");
    }
    if (e.src_text != Slice(set.source, e.src)) {
      Structural(set, where + "source text does not match span");
    }
    if (e.kind != KindForSides(e.src.empty(), e.corr_text.empty()) ||
        (e.src.empty() && e.corr_text.empty())) {
      Structural(set, where + "kind does not match its sides");
    }
    if (e.confidence && !(*e.confidence >= 0.0 && *e.confidence <= 1.0)) {
      Structural(set, where + "confidence outside [0, 1]");
    }
    cursor = e.src.end;
  }
}

TokenSequence ApplyEdits(const EditSet& set) {
  ValidateEditSet(set);
  TokenSequence out{set.utt_id, {}};
  std::size_t cursor = 0;
  for (const Edit& e : set.edits) {
    out.tokens.insert(out.tokens.end(), set.source.begin() + cursor,
                      set.source.begin() + e.src.begin);
    out.tokens.insert(out.tokens.end(), e.corr_text.begin(),
                      e.corr_text.end());
    cursor = e.src.end;
  }
  out.tokens.insert(out.tokens.end(), set.source.begin() + cursor,
                    set.source.end());
  return out;
}

std::vector<Span> CorrectionSpans(const EditSet& set) {
  std::vector<Span> spans;
  spans.reserve(set.edits.size());
  std::size_t out_pos = 0;
  std::size_t cursor = 0;
  for (const Edit& e : set.edits) {
    out_pos += e.src.begin - cursor;
    spans.push_back({out_pos, out_pos + e.corr_text.size()});
    out_pos += e.corr_text.size();
    cursor = e.src.end;
  }
  return spans;
}

std::string WriteM2(std::span<const EditSet> sets) {
  std::string out;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const EditSet& set = sets[s];
    ValidateEditSet(set);
    if (s > 0) out += '\n';
    out += "S ";
    out += Join(set.source);
    out += '\n';
    for (const Edit& e : set.edits) {
      out += "A ";
      out += std::to_string(e.src.begin);
      out += ' ';
      out += std::to_string(e.src.end);
      out += kFieldSep;
      out += EditKindCode(e.kind);
      out += kFieldSep;
      out += e.corr_text.empty() ? std::string(kNone) : Join(e.corr_text);
      out += "|||REQUIRED|||-NONE-|||0\n";
    }
  }
  return out;
}

std::vector<EditSet> ParseM2(std::string_view content) {
  std::vector<EditSet> sets;
  bool in_block = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      in_block = false;
      continue;
    }
    if (line == "S" || line.starts_with("S ")) {
      if (in_block) FormatAt(line_no, "missing blank line before S line");
      EditSet set;
      set.utt_id = std::to_string(sets.size());
      set.source = SplitSpaces(line.size() > 2 ? line.substr(2) : "");
      sets.push_back(std::move(set));
      in_block = true;
      continue;
    }
    if (!line.starts_with("A ")) FormatAt(line_no, "expected S or A line");
    if (!in_block) FormatAt(line_no, "A line outside an utterance block");

    const auto fields = SplitFields(line.substr(2));
    if (fields.size() != 6) FormatAt(line_no, "expected 6 |||-separated fields");
    const std::string_view offsets = fields[0];
    const std::size_t space = offsets.find(' ');
    std::size_t begin = 0;
    std::size_t end = 0;
    if (space == std::string_view::npos ||
        !ParseIndex(offsets.substr(0, space), begin) ||
        !ParseIndex(offsets.substr(space + 1), end)) {
      FormatAt(line_no, "bad offsets '" + std::string(offsets) + "'");
    }
    const auto kind = EditKindFromCode(fields[1]);
    if (!kind) FormatAt(line_no, "unknown edit type '" + std::string(fields[1]) + "'");
    if (fields[2].empty()) FormatAt(line_no, "empty correction field");

    EditSet& set = sets.back();
    if (begin > end || end > set.source.size()) {
      throw Error(ErrorCode::kStructural,
                  "m2 line " + std::to_string(line_no) + ": span " +
                      std::to_string(begin) + " " + std::to_string(end) +
                      " out of range for " +
                      std::to_string(set.source.size()) + " source tokens");
    }
    Edit edit;
    edit.kind = *kind;
    edit.src = {begin, end};
    edit.src_text = Slice(set.source, edit.src);
    if (fields[2] != kNone) edit.corr_text = SplitSpaces(fields[2]);
    set.edits.push_back(std::move(edit));
  }
  for (const EditSet& set : sets) ValidateEditSet(set);
  return sets;
}

}  // namespace sgec
