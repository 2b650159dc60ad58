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

#ifndef SGEC_CORPUSIO_H_
#define SGEC_CORPUSIO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sgec/confidence.h"
#include "sgec/textnorm.h"
#include "sgec/types.h"

namespace sgec {

// Ordered utterances with unique ids.
class Corpus {
 public:
  Corpus() = default;

  // Throws Error(kValidation) on a duplicate id.
  void Add(TokenSequence seq);

  const TokenSequence* Find(std::string_view utt_id) const;
  bool Contains(std::string_view utt_id) const {
    return Find(utt_id) != nullptr;
  }

  const std::vector<TokenSequence>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  std::vector<std::string> ids() const;

 private:
  std::vector<TokenSequence> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Transcript TSV: one `utt_id<TAB>text` per line, blank lines ignored.
// A non-blank line without a TAB is a format error naming the line number.
Corpus ParseCorpus(std::string_view content, const NormConfig& config);
Corpus LoadCorpus(const std::filesystem::path& path, const NormConfig& config);
std::string WriteCorpus(std::span<const TokenSequence> items);

// Token-confidence JSONL, duplicate ids rejected.
std::vector<ConfidenceEntry> LoadConfidence(const std::filesystem::path& path);

struct CorpusBundle {
  std::optional<Corpus> flt_hyp;
  std::optional<Corpus> flt_ref;
  std::optional<Corpus> gec_hyp;
  std::optional<Corpus> gec_ref;
  // Attached to flt_hyp and gec_hyp respectively, when those are present.
  std::optional<std::vector<ConfidenceEntry>> flt_conf;
  std::optional<std::vector<ConfidenceEntry>> gec_conf;
};

struct ValidationIssue {
  std::string member;
  std::string utt_id;
  std::string message;

  friend bool operator==(const ValidationIssue&,
                         const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  std::string ToString() const;
};

// Reports ids missing from any present member (relative to the union of all
// members) and confidence entries that cannot be reconciled with their
// transcript. Never throws for content problems.
ValidationReport ValidateBundle(const CorpusBundle& bundle,
                                const NormConfig& config);

}  // namespace sgec

#endif  // SGEC_CORPUSIO_H_
