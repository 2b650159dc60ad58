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

#include "sgec/score.h"

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "sgec/error.h"

namespace sgec {
namespace {

const AlignmentOp* OpCovering(const AlignmentOpList& bridge, std::size_t pos) {
  auto it = std::upper_bound(
      bridge.begin(), bridge.end(), pos,
      [](std::size_t p, const AlignmentOp& op) { return p < op.src.end; });
  // Ins opcodes have empty source spans and can never cover a token.
  while (it != bridge.end() && it->src.empty()) ++it;
  return it == bridge.end() ? nullptr : &*it;
}

// Reference position at which hypothesis token `pos` starts.
std::size_t TokenStart(const AlignmentOpList& bridge, std::size_t pos) {
  const AlignmentOp* op = OpCovering(bridge, pos);
  if (op == nullptr) return bridge.empty() ? 0 : bridge.back().tgt.end;
  if (op->kind == OpKind::kDel) return op->tgt.begin;
  return op->tgt.begin + (pos - op->src.begin);
}

// Reference position at which hypothesis token `pos` ends.
std::size_t TokenEnd(const AlignmentOpList& bridge, std::size_t pos) {
  const AlignmentOp* op = OpCovering(bridge, pos);
  if (op == nullptr) return bridge.empty() ? 0 : bridge.back().tgt.end;
  if (op->kind == OpKind::kDel) return op->tgt.begin;
  return op->tgt.begin + (pos - op->src.begin) + 1;
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", x);
  return buf;
}

}  // namespace

Span ProjectSpan(Span span, const AlignmentOpList& bridge) {
  if (span.empty()) {
    const std::size_t p = TokenStart(bridge, span.begin);
    return {p, p};
  }
  return {TokenStart(bridge, span.begin), TokenEnd(bridge, span.end - 1)};
}

bool Compatible(const Edit& hyp, Span projected, const Edit& ref) {
  if (hyp.kind != ref.kind || hyp.corr_text != ref.corr_text) return false;
  if (projected.empty() || ref.src.empty()) {
    return projected.begin == ref.src.begin;
  }
  return std::max(projected.begin, ref.src.begin) <
         std::min(projected.end, ref.src.end);
}

MatchCounts& MatchCounts::operator+=(const MatchCounts& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

MatchResult MatchEdits(const EditSet& hyp, const EditSet& ref,
                       const AlignmentOpList& bridge) {
  MatchResult result;
  std::vector<bool> taken(ref.edits.size(), false);
  for (std::size_t h = 0; h < hyp.edits.size(); ++h) {
    const Span projected = ProjectSpan(hyp.edits[h].src, bridge);
    for (std::size_t r = 0; r < ref.edits.size(); ++r) {
      if (taken[r] || !Compatible(hyp.edits[h], projected, ref.edits[r])) {
        continue;
      }
      taken[r] = true;
      result.pairs.emplace_back(h, r);
      break;
    }
  }
  result.counts.tp = result.pairs.size();
  result.counts.fp = hyp.edits.size() - result.counts.tp;
  result.counts.fn = ref.edits.size() - result.counts.tp;
  return result;
}

double FBeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

ScoreReport Prf(const MatchCounts& counts) {
  ScoreReport report;
  report.counts = counts;
  if (counts.tp + counts.fp > 0) {
    report.precision = static_cast<double>(counts.tp) /
                       static_cast<double>(counts.tp + counts.fp);
  }
  if (counts.tp + counts.fn > 0) {
    report.recall = static_cast<double>(counts.tp) /
                    static_cast<double>(counts.tp + counts.fn);
  }
  report.f_half = FBeta(report.precision, report.recall, 0.5);
  return report;
}

UtteranceEval MakeUtteranceEval(EditSet hyp, EditSet ref) {
  AlignmentOpList bridge = Align(hyp.source, ref.source);
  return {std::move(hyp), std::move(ref), std::move(bridge)};
}

ScoreReport ScoreCorpus(std::span<const UtteranceEval> corpus) {
  MatchCounts total;
  for (const auto& utt : corpus) {
    total += MatchEdits(utt.hyp, utt.ref, utt.bridge).counts;
  }
  return Prf(total);
}

std::vector<SweepRow> Sweep(std::span<const UtteranceEval> corpus,
                            std::span<const double> thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
      throw Error(ErrorCode::kValidation, "thresholds must lie in [0, 1]");
    }
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw Error(ErrorCode::kValidation, "thresholds must be ascending");
    }
  }
  std::vector<SweepRow> rows;
  rows.reserve(thresholds.size());
  for (const double tau : thresholds) {
    MatchCounts total;
    std::size_t kept = 0;
    for (const auto& utt : corpus) {
      EditSet filtered{utt.hyp.utt_id, utt.hyp.source, {}};
      for (std::size_t i = 0; i < utt.hyp.edits.size(); ++i) {
        const Edit& edit = utt.hyp.edits[i];
        if (!edit.confidence) {
          throw Error(ErrorCode::kValidation,
                      "utterance '" + utt.hyp.utt_id + "': edit " +
                          std::to_string(i) + " has no confidence");
        }
        if (*edit.confidence >= tau) filtered.edits.push_back(edit);
      }
      kept += filtered.edits.size();
      total += MatchEdits(filtered, utt.ref, utt.bridge).counts;
    }
    rows.push_back({tau, Prf(total), kept});
  }
  return rows;
}

std::vector<double> UniformThresholds(std::size_t steps) {
  std::vector<double> out;
  if (steps == 0) return out;
  if (steps == 1) return {0.0};
  out.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

std::string ScoreReportJson(const ScoreReport& report) {
  const nlohmann::ordered_json doc = {
      {"tp", report.counts.tp},
      {"fp", report.counts.fp},
      {"fn", report.counts.fn},
      {"precision", report.precision},
      {"recall", report.recall},
      {"f0_5", report.f_half},
  };
  return doc.dump() + "\n";
}

std::string ScoreReportText(const ScoreReport& report) {
  std::string out;
  out += "TP\tFP\tFN\tPrec\tRec\tF0.5\n";
  out += std::to_string(report.counts.tp) + "\t" +
         std::to_string(report.counts.fp) + "\t" +
         std::to_string(report.counts.fn) + "\t" +
         FormatDouble(report.precision) + "\t" + FormatDouble(report.recall) +
         "\t" + FormatDouble(report.f_half) + "\n";
  return out;
}

std::string SweepTsv(std::span<const SweepRow> rows) {
  std::string out = "tau\tP\tR\tF0.5\tkept\n";
  for (const auto& row : rows) {
    out += FormatDouble(row.threshold) + "\t" +
           FormatDouble(row.report.precision) + "\t" +
           FormatDouble(row.report.recall) + "\t" +
           FormatDouble(row.report.f_half) + "\t" + std::to_string(row.kept) +
           "\n";
  }
  return out;
}

}  // namespace sgec
