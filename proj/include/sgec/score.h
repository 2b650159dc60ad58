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

#ifndef SGEC_SCORE_H_
#define SGEC_SCORE_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgec/align.h"
#include "sgec/edits.h"
#include "sgec/types.h"

namespace sgec {

// Maps a span over the bridge source (fluent hypothesis) to the bridge
// target (fluent reference). Tokens inside hypothesis-only regions collapse
// onto the zero-length reference position at the region boundary. A
// zero-length span at position p maps to the reference position of
// hypothesis token p (or to the reference length when p is past the end).
Span ProjectSpan(Span span, const AlignmentOpList& bridge);

// Hypothesis and reference edits are compatible when kinds and correction
// tokens agree and the projected hypothesis span overlaps the reference span.
// If either span is zero-length, their start positions must coincide.
bool Compatible(const Edit& hyp, Span projected, const Edit& ref);

struct MatchCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  MatchCounts& operator+=(const MatchCounts& other);
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct MatchResult {
  MatchCounts counts;
  // (hypothesis edit index, reference edit index), one-to-one.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Greedy left-to-right matching: each hypothesis edit takes the first
// unmatched compatible reference edit.
MatchResult MatchEdits(const EditSet& hyp, const EditSet& ref,
                       const AlignmentOpList& bridge);

struct ScoreReport {
  MatchCounts counts;
  double precision = 1.0;
  double recall = 1.0;
  double f_half = 1.0;

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

// (1 + b^2) P R / (b^2 P + R); zero when P and R are both zero.
double FBeta(double precision, double recall, double beta);

// P = tp / (tp + fp), R = tp / (tp + fn), each 1.0 when its denominator is
// zero.
ScoreReport Prf(const MatchCounts& counts);

// Everything needed to score one utterance: hypothesis edits over the fluent
// hypothesis, reference edits over the fluent reference, and the bridge
// Align(hyp.source, ref.source).
struct UtteranceEval {
  EditSet hyp;
  EditSet ref;
  AlignmentOpList bridge;
};

UtteranceEval MakeUtteranceEval(EditSet hyp, EditSet ref);

// Corpus score from summed counts.
ScoreReport ScoreCorpus(std::span<const UtteranceEval> corpus);

struct SweepRow {
  double threshold = 0.0;
  ScoreReport report;
  std::size_t kept = 0;
};

// For each threshold: keep hypothesis edits with confidence >= threshold,
// match, and score. Hypothesis edits must already carry confidences.
// Thresholds must be ascending and within [0, 1].
std::vector<SweepRow> Sweep(std::span<const UtteranceEval> corpus,
                            std::span<const double> thresholds);

// `steps` evenly spaced thresholds from 0 to 1 inclusive.
std::vector<double> UniformThresholds(std::size_t steps);

std::string ScoreReportJson(const ScoreReport& report);
std::string ScoreReportText(const ScoreReport& report);
std::string SweepTsv(std::span<const SweepRow> rows);

}  // namespace sgec

#endif  // SGEC_SCORE_H_
