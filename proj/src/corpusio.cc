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

#include "sgec/corpusio.h"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "sgec/error.h"

namespace sgec {

void Corpus::Add(TokenSequence seq) {
  const auto [it, inserted] = index_.emplace(seq.utt_id, items_.size());
  if (!inserted) {
    throw Error(ErrorCode::kValidation,
                "duplicate utterance id '" + seq.utt_id + "'");
  }
  items_.push_back(std::move(seq));
}

const TokenSequence* Corpus::Find(std::string_view utt_id) const {
  const auto it = index_.find(std::string(utt_id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& seq : items_) out.push_back(seq.utt_id);
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIo, "error reading '" + path.string() + "'");
  }
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, "error writing '" + path.string() + "'");
  }
}

Corpus ParseCorpus(std::string_view content, const NormConfig& config) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw Error(ErrorCode::kFormat,
                  "transcript line " + std::to_string(line_no) +
                      ": expected utt_id<TAB>text");
    }
    corpus.Add(TokenizeNormalized(line.substr(tab + 1), config,
                                  std::string(line.substr(0, tab))));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, const NormConfig& config) {
  try {
    return ParseCorpus(ReadFile(path), config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string WriteCorpus(std::span<const TokenSequence> items) {
  std::string out;
  for (const auto& seq : items) {
    out += seq.utt_id;
    out += '\t';
    out += Join(seq.tokens);
    out += '\n';
  }
  return out;
}

std::vector<ConfidenceEntry> LoadConfidence(const std::filesystem::path& path) {
  try {
    auto entries = ParseConfidenceJsonl(ReadFile(path));
    std::set<std::string> seen;
    for (const auto& entry : entries) {
      if (!seen.insert(entry.utt_id).second) {
        throw Error(ErrorCode::kValidation,
                    "duplicate utterance id '" + entry.utt_id + "'");
      }
    }
    return entries;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string ValidationReport::ToString() const {
  std::string out;
  for (const auto& issue : issues) {
    out += issue.member + "\t" + issue.utt_id + "\t" + issue.message + "\n";
  }
  return out;
}

namespace {

struct Member {
  std::string name;
  std::vector<std::string> ids;
};

}  // namespace

ValidationReport ValidateBundle(const CorpusBundle& bundle,
                                const NormConfig& config) {
  std::vector<Member> members;
  auto add_corpus = [&members](const char* name,
                               const std::optional<Corpus>& corpus) {
    if (corpus) members.push_back({name, corpus->ids()});
  };
  auto add_conf = [&members](const char* name,
                             const std::optional<std::vector<ConfidenceEntry>>&
                                 entries) {
    if (!entries) return;
    Member m{name, {}};
    for (const auto& e : *entries) m.ids.push_back(e.utt_id);
    members.push_back(std::move(m));
  };
  add_corpus("flt_hyp", bundle.flt_hyp);
  add_corpus("flt_ref", bundle.flt_ref);
  add_corpus("gec_hyp", bundle.gec_hyp);
  add_corpus("gec_ref", bundle.gec_ref);
  add_conf("flt_conf", bundle.flt_conf);
  add_conf("gec_conf", bundle.gec_conf);

  // Union of ids in first-seen order.
  std::vector<std::string> all;
  std::set<std::string> seen;
  for (const auto& m : members) {
    for (const auto& id : m.ids) {
      if (seen.insert(id).second) all.push_back(id);
    }
  }

  ValidationReport report;
  for (const auto& m : members) {
    const std::set<std::string> have(m.ids.begin(), m.ids.end());
    for (const auto& id : all) {
      if (!have.contains(id)) {
        report.issues.push_back({m.name, id, "missing utterance"});
      }
    }
  }

  auto check_conf = [&](const char* name, const std::optional<Corpus>& corpus,
                        const std::optional<std::vector<ConfidenceEntry>>&
                            entries) {
    if (!corpus || !entries) return;
    for (const auto& entry : *entries) {
      const TokenSequence* seq = corpus->Find(entry.utt_id);
      if (seq == nullptr) continue;
      try {
        AttachConfidence(*seq, entry, config);
      } catch (const Error& e) {
        report.issues.push_back({name, entry.utt_id, e.what()});
      }
    }
  };
  check_conf("flt_conf", bundle.flt_hyp, bundle.flt_conf);
  check_conf("gec_conf", bundle.gec_hyp, bundle.gec_conf);
  return report;
}

}  // namespace sgec
