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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sgec/align.h"
#include "sgec/confidence.h"
#include "sgec/edits.h"
#include "sgec/error.h"
#include "sgec/refmod.h"
#include "sgec/score.h"
#include "testing/oracles.h"

namespace sgec {
namespace {

using testing::Words;

// Collects failures; keeps the first few messages for the report line.
class Checker {
 public:
  void Expect(bool condition, const std::string& message) {
    ++checks_;
    if (condition) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(message);
  }
  void Note(const std::string& note) { notes_.push_back(note); }

  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    for (const auto& n : notes_) out << ", " << n;
    if (failures_ > 0) {
      out << ", " << failures_ << " failed:";
      for (const auto& m : messages_) out << " [" << m << "]";
    }
    return out.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string Str(const Tokens& tokens) { return "\"" + Join(tokens) + "\""; }

// ------------------------------------------------------------------ 1

void FormulaReproduction(Checker& c) {
  const double rows[][3] = {{46.60, 26.61, 40.51},
                            {43.92, 32.63, 41.08},
                            {41.87, 33.06, 39.75},
                            {49.43, 28.51, 43.10},
                            {53.61, 26.29, 44.39}};
  double worst = 0.0;
  for (const auto& row : rows) {
    const double f = FBeta(row[0] / 100, row[1] / 100, 0.5) * 100;
    worst = std::max(worst, std::abs(f - row[2]));
    c.Expect(std::abs(f - row[2]) <= 0.02,
             "F0.5(" + std::to_string(row[0]) + ", " + std::to_string(row[1]) +
                 ") = " + std::to_string(f));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "max |dF0.5| = %.4f", worst);
  c.Note(buf);
}

// ------------------------------------------------------------------ 2

bool HasEdit(const EditSet& set, EditKind kind, const Tokens& src,
             const Tokens& corr) {
  return std::any_of(set.edits.begin(), set.edits.end(), [&](const Edit& e) {
    return e.kind == kind && e.src_text == src && e.corr_text == corr;
  });
}

void WorkedExample(Checker& c) {
  const testing::CatExample ex;
  const EditSet ref = ExtractEdits({"u", ex.flt_ref}, {"u", ex.gec_ref});
  const EditSet hyp = ExtractEdits({"u", ex.flt_hyp}, {"u", ex.gec_ref});
  c.Expect(ref.edits.size() == 1, "reference edit count");
  c.Expect(HasEdit(ref, EditKind::kReplace, Words({"rest"}), Words({"rested"})),
           "reference R rest->rested");
  c.Expect(hyp.edits.size() == 3, "hypothesis edit count");
  c.Expect(HasEdit(hyp, EditKind::kReplace, Words({"rat"}), Words({"cat"})),
           "hypothesis R rat->cat");
  c.Expect(HasEdit(hyp, EditKind::kReplace, Words({"rest"}), Words({"rested"})),
           "hypothesis R rest->rested");
  c.Expect(HasEdit(hyp, EditKind::kMissing, {}, Words({"the"})),
           "hypothesis M the");

  const MatchCounts counts = ScoreCorpus(std::vector<UtteranceEval>{
                                             MakeUtteranceEval(hyp, ref)})
                                 .counts;
  c.Expect(counts == MatchCounts{1, 2, 0},
           "tp/fp/fn = " + std::to_string(counts.tp) + "/" +
               std::to_string(counts.fp) + "/" + std::to_string(counts.fn));

  const RefModOutput out = ModifyReference(ex.flt_hyp, ex.flt_ref, ex.gec_ref);
  c.Expect(out.mild == Words({"the", "rat", "calmly", "rested", "on", "the", "mat"}),
           "mild = " + Str(out.mild));
  c.Expect(out.strong == Words({"the", "rat", "calmly", "rested", "on", "mat"}),
           "strong = " + Str(out.strong));
  const EditSet strong = ExtractEdits({"u", ex.flt_hyp}, {"u", out.strong});
  c.Expect(strong.edits.size() == 1 &&
               HasEdit(strong, EditKind::kReplace, Words({"rest"}),
                       Words({"rested"})),
           "strong edits vs hypothesis");
}

// ------------------------------------------------------------------ 3

// Spans tile both sides, shapes fit kinds, equal runs are token-identical.
bool WellFormed(const AlignmentOpList& ops, const Tokens& src,
                const Tokens& tgt) {
  std::size_t si = 0;
  std::size_t ti = 0;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const AlignmentOp& op = ops[k];
    if (op.src.begin != si || op.tgt.begin != ti) return false;
    if (op.src.end < op.src.begin || op.tgt.end < op.tgt.begin) return false;
    if (k > 0 && ops[k - 1].kind == op.kind) return false;
    switch (op.kind) {
      case OpKind::kEqual:
        if (!std::equal(src.begin() + op.src.begin, src.begin() + op.src.end,
                        tgt.begin() + op.tgt.begin, tgt.begin() + op.tgt.end)) {
          return false;
        }
        [[fallthrough]];
      case OpKind::kSub:
        if (op.src.empty() || op.src.size() != op.tgt.size()) return false;
        break;
      case OpKind::kIns:
        if (!op.src.empty() || op.tgt.empty()) return false;
        break;
      case OpKind::kDel:
        if (op.src.empty() || !op.tgt.empty()) return false;
        break;
    }
    si = op.src.end;
    ti = op.tgt.end;
  }
  return si == src.size() && ti == tgt.size();
}

void AlignmentOracle(Checker& c) {
  std::mt19937 rng(3001);
  const int kCases = 2000;
  for (int round = 0; round < kCases; ++round) {
    const Tokens a = testing::RandomTokens(rng, 8, 5);
    const Tokens b = testing::RandomTokens(rng, 8, 5);
    const AlignmentOpList ops = Align(a, b);
    const std::size_t brute = testing::BruteLevenshtein(a, b);
    c.Expect(AlignmentCost(ops) == brute,
             Str(a) + " vs " + Str(b) + ": cost " +
                 std::to_string(AlignmentCost(ops)) + " != " +
                 std::to_string(brute));
    c.Expect(WellFormed(ops, a, b), Str(a) + " vs " + Str(b) + ": partition");
  }
  c.Note(std::to_string(kCases) + " pairs");
}

// ------------------------------------------------------------------ 4

void RefmodIdentity(Checker& c) {
  std::mt19937 rng(4001);
  const int kCases = 1000;
  for (int round = 0; round < kCases; ++round) {
    const Tokens r = testing::RandomTokens(rng, 10, 5);
    const Tokens gec = testing::Perturb(rng, r, 5, 0.3);
    const RefModOutput out = ModifyReference(r, r, gec);
    c.Expect(out.mild == gec && out.strong == gec,
             "H=R=" + Str(r) + " C=" + Str(gec));
  }
  for (int round = 0; round < kCases; ++round) {
    const Tokens r = testing::RandomTokens(rng, 10, 5);
    const Tokens h = testing::Perturb(rng, r, 5, 0.3);
    const Tokens gec = testing::Perturb(rng, r, 5, 0.3);
    RefModTrace trace;
    ModifyReference(h, r, gec, &trace);
    c.Expect(std::includes(trace.mild_kept.begin(), trace.mild_kept.end(),
                           trace.strong_kept.begin(), trace.strong_kept.end()),
             "containment for H=" + Str(h) + " R=" + Str(r) + " C=" + Str(gec));
  }
  c.Note(std::to_string(kCases) + " identity + " + std::to_string(kCases) +
         " containment triples");
}

// ------------------------------------------------------------------ 5

struct SideStats {
  double avg;
  double min;
};

SideStats Stats(const ConfidencedSequence& seq, std::size_t begin,
                std::size_t end, double fill) {
  if (begin == end) return {fill, fill};
  double sum = 0.0;
  double lo = 1.0;
  for (std::size_t k = begin; k < end; ++k) {
    sum += seq.tokens[k].conf;
    lo = std::min(lo, seq.tokens[k].conf);
  }
  return {sum / static_cast<double>(end - begin), lo};
}

ConfidencedSequence RandomConfidences(std::mt19937& rng, const Tokens& words,
                                      std::optional<double> constant) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConfidencedSequence out{"u", {}};
  for (const auto& w : words) out.tokens.push_back({w, constant.value_or(unit(rng))});
  return out;
}

void ConfidenceAlgebra(Checker& c) {
  std::mt19937 rng(5001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ConfidenceMode modes[] = {ConfidenceMode::kFltAvg, ConfidenceMode::kFltMin,
                                  ConfidenceMode::kGecAvg, ConfidenceMode::kGecMin,
                                  ConfidenceMode::kAvg,    ConfidenceMode::kMin};
  std::size_t edits = 0;
  std::size_t constant_edits = 0;
  while (edits < 2000) {
    const Tokens flt_words = testing::RandomTokens(rng, 10, 6);
    const Tokens gec_words = testing::Perturb(rng, flt_words, 6, 0.35);
    const EditSet set = ExtractEdits({"u", flt_words}, {"u", gec_words});
    const bool constant_case = (edits / 50) % 4 == 3;
    const std::optional<double> constant =
        constant_case ? std::optional<double>(unit(rng)) : std::nullopt;
    const auto flt = RandomConfidences(rng, flt_words, constant);
    const auto gec = RandomConfidences(rng, gec_words, constant);

    // Correction positions, recomputed from the running length offset.
    std::ptrdiff_t offset = 0;
    for (const Edit& e : set.edits) {
      const std::size_t gb = e.src.begin + offset;
      const std::size_t ge = gb + e.corr_text.size();
      offset += static_cast<std::ptrdiff_t>(e.corr_text.size()) -
                static_cast<std::ptrdiff_t>(e.src.size());
      const Span gec_span{gb, ge};
      ++edits;

      const double fill = constant ? *constant : 1.0;
      const SideStats fs = Stats(flt, e.src.begin, e.src.end, fill);
      const SideStats gs = Stats(gec, gb, ge, fill);
      const double expected[] = {fs.avg, fs.min, gs.avg, gs.min,
                                 0.5 * (fs.avg + gs.avg), std::min(fs.min, gs.min)};
      double got[6];
      for (int m = 0; m < 6; ++m) {
        got[m] = EditConfidence(e, flt, gec, gec_span,
                                FilterPolicy{modes[m], 0.0, fill});
        c.Expect(std::abs(got[m] - expected[m]) <= 1e-12,
                 std::string(ConfidenceModeName(modes[m])) + " " +
                     std::to_string(got[m]) + " != " + std::to_string(expected[m]));
      }
      c.Expect(got[5] <= got[4] + 1e-15, "min-mode above avg-mode");
      if (e.kind == EditKind::kMissing) {
        c.Expect(got[0] == fill && got[1] == fill, "M edit fluent side not filled");
      }
      if (e.kind == EditKind::kUnnecessary) {
        c.Expect(got[2] == fill && got[3] == fill, "U edit GEC side not filled");
      }
      if (constant) {
        ++constant_edits;
        for (int m = 0; m < 6; ++m) {
          c.Expect(std::abs(got[m] - *constant) <= 1e-12, "constant collapse");
        }
      }
    }
  }
  c.Note(std::to_string(edits) + " edits, " + std::to_string(constant_edits) +
         " under constant confidence");
}

// ------------------------------------------------------------------ 6, 7

std::vector<UtteranceEval> SyntheticCorpus(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UtteranceEval> corpus;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "u" + std::to_string(i);
    const Tokens flt_ref = testing::RandomTokens(rng, 12, 6);
    const Tokens gec_ref = testing::Perturb(rng, flt_ref, 6, 0.25);
    const Tokens flt_hyp = testing::Perturb(rng, flt_ref, 6, 0.15);
    const Tokens gec_hyp = testing::Perturb(rng, gec_ref, 6, 0.1);
    EditSet hyp = ExtractEdits({id, flt_hyp}, {id, gec_hyp});
    for (auto& e : hyp.edits) e.confidence = unit(rng);
    corpus.push_back(
        MakeUtteranceEval(std::move(hyp), ExtractEdits({id, flt_ref}, {id, gec_ref})));
  }
  return corpus;
}

void FilteringMonotonicity(Checker& c) {
  std::mt19937 rng(6001);
  const auto corpus = SyntheticCorpus(rng, 200);
  const auto rows = Sweep(corpus, UniformThresholds(101));
  c.Expect(rows.size() == 101, "row count");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    c.Expect(rows[i].kept <= rows[i - 1].kept,
             "kept rises at row " + std::to_string(i));
    c.Expect(rows[i].report.recall <= rows[i - 1].report.recall,
             "recall rises at row " + std::to_string(i));
  }
  const ScoreReport plain = ScoreCorpus(corpus);
  c.Expect(rows[0].report == plain &&
               ScoreReportJson(rows[0].report) == ScoreReportJson(plain),
           "tau=0 differs from unfiltered score");
  c.Note("kept " + std::to_string(rows.front().kept) + " -> " +
         std::to_string(rows.back().kept));
}

void MatchingOracle(Checker& c) {
  std::mt19937 rng(7001);
  std::size_t checked = 0;
  std::size_t deficit = 0;
  for (const UtteranceEval& utt : SyntheticCorpus(rng, 600)) {
    if (utt.hyp.edits.size() > 6 || utt.ref.edits.size() > 6) continue;
    ++checked;
    const std::size_t greedy = MatchEdits(utt.hyp, utt.ref, utt.bridge).counts.tp;
    const std::size_t best = testing::BruteMaxMatching(
        utt.hyp.edits.size(), utt.ref.edits.size(),
        [&](std::size_t h, std::size_t r) {
          return Compatible(utt.hyp.edits[h],
                            ProjectSpan(utt.hyp.edits[h].src, utt.bridge),
                            utt.ref.edits[r]);
        });
    if (best > greedy) deficit += best - greedy;
    c.Expect(greedy == best, utt.hyp.utt_id + ": greedy " +
                                 std::to_string(greedy) + " < max " +
                                 std::to_string(best));
  }
  c.Expect(checked >= 200, "only " + std::to_string(checked) + " utterances");
  c.Note(std::to_string(checked) + " utterances, tp deficit " +
         std::to_string(deficit));
}

// ------------------------------------------------------------------ 8

void SerializationRoundTrips(Checker& c) {
  std::mt19937 rng(8001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int kSets = 1000;
  std::vector<EditSet> sets;
  std::vector<ConfidenceEntry> entries;
  std::vector<ConfidencedSequence> confidenced;
  for (int i = 0; i < kSets; ++i) {
    const std::string id = std::to_string(i);
    const Tokens fluent = testing::RandomTokens(rng, 12, 40);
    const Tokens corrected = testing::Perturb(rng, fluent, 40, 0.3);
    sets.push_back(ExtractEdits({id, fluent}, {id, corrected}));
    ConfidencedSequence cs{id, {}};
    for (const auto& w : fluent) cs.tokens.push_back({w, unit(rng)});
    entries.push_back(DetachConfidence(cs));
    confidenced.push_back(std::move(cs));
  }

  const std::string m2 = WriteM2(sets);
  const std::vector<EditSet> parsed = ParseM2(m2);
  c.Expect(parsed.size() == sets.size(), "M2 set count");
  for (std::size_t i = 0; i < std::min(parsed.size(), sets.size()); ++i) {
    c.Expect(parsed[i] == sets[i], "M2 set " + std::to_string(i));
  }
  c.Expect(WriteM2(parsed) == m2, "M2 rewrite not byte-identical");

  const std::string jsonl = WriteConfidenceJsonl(entries);
  const std::vector<ConfidenceEntry> read = ParseConfidenceJsonl(jsonl);
  c.Expect(read.size() == entries.size(), "confidence entry count");
  c.Expect(WriteConfidenceJsonl(read) == jsonl,
           "confidence rewrite not byte-identical");
  const NormConfig norm;
  for (std::size_t i = 0; i < std::min(read.size(), confidenced.size()); ++i) {
    const ConfidencedSequence back =
        AttachConfidence({sets[i].utt_id, sets[i].source}, read[i], norm);
    c.Expect(back == confidenced[i], "attach/detach " + std::to_string(i));
  }
  c.Note(std::to_string(kSets) + " sets");
}

// ------------------------------------------------------------------ 9

void WerSanity(Checker& c) {
  std::mt19937 rng(9001);
  std::vector<WerReport> identical;
  for (int i = 0; i < 200; ++i) {
    const Tokens t = testing::RandomTokens(rng, 10, 8);
    identical.push_back(Wer(t, t));
  }
  const WerReport same = CombineWer(identical);
  c.Expect(same.rate && *same.rate == 0.0, "identical corpora WER != 0");

  const testing::CatExample ex;
  const WerReport fixture = Wer(ex.gec_ref, ex.flt_hyp);
  c.Expect(fixture.rate && std::abs(*fixture.rate - 3.0 / 7.0) < 1e-12,
           "fixture WER " + std::to_string(fixture.rate.value_or(-1)));
  c.Expect(fixture.counts.subs == 2 && fixture.counts.dels == 1 &&
               fixture.counts.ins == 0,
           "fixture counts");

  for (int i = 0; i < 2000; ++i) {
    const Tokens ref = testing::RandomTokens(rng, 6, 5);
    const Tokens hyp = testing::Perturb(rng, ref, 5, 0.4);
    const WerReport r = Wer(ref, hyp);
    c.Expect(r.counts.subs + r.counts.dels + r.counts.hits == ref.size(),
             "subs+dels+hits != |ref| for " + Str(ref));
    c.Expect(r.counts.subs + r.counts.ins + r.counts.hits == hyp.size(),
             "subs+ins+hits != |hyp| for " + Str(hyp));
    c.Expect(r.counts.errors() == testing::BruteLevenshtein(ref, hyp),
             "errors != edit distance for " + Str(ref));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "fixture WER %.4f", fixture.rate.value_or(-1));
  c.Note(buf);
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Checker&)> run;
};

int RunAll() {
  const Criterion criteria[] = {
      {1, "F0.5 formula reproduction", 1, FormulaReproduction},
      {2, "worked example", 1, WorkedExample},
      {3, "alignment oracle", 30, AlignmentOracle},
      {4, "refmod identity and containment", 30, RefmodIdentity},
      {5, "confidence mode algebra", 10, ConfidenceAlgebra},
      {6, "filtering monotonicity", 10, FilteringMonotonicity},
      {7, "matching oracle", 30, MatchingOracle},
      {8, "serialization round-trips", 10, SerializationRoundTrips},
      {9, "WER sanity", 10, WerSanity},
  };
  int failed = 0;
  for (const Criterion& crit : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(checker);
    } catch (const std::exception& e) {
      checker.Expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    checker.Expect(seconds < crit.limit_s, "over time budget");
    const bool ok = checker.ok();
    if (!ok) ++failed;
    std::printf("[%s] %d %s (%.3f s, limit %.0f s): %s\n", ok ? "PASS" : "FAIL",
                crit.id, crit.name, seconds, crit.limit_s,
                checker.Summary().c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace sgec

int main() { return sgec::RunAll(); }
