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

#include "sgec/align.h"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace sgec {

std::string_view OpKindName(OpKind kind) {
  switch (kind) {
    case OpKind::kEqual:
      return "equal";
    case OpKind::kSub:
      return "sub";
    case OpKind::kIns:
      return "ins";
    case OpKind::kDel:
      return "del";
  }
  return "?";
}

AlignmentOpList Align(std::span<const std::string> src,
                      std::span<const std::string> tgt) {
  const std::size_t n = src.size();
  const std::size_t m = tgt.size();
  const std::size_t width = m + 1;
  // cost[i * width + j] = distance between src[0, i) and tgt[0, j).
  std::vector<std::size_t> cost((n + 1) * width);
  for (std::size_t i = 0; i <= n; ++i) cost[i * width] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag =
          cost[(i - 1) * width + j - 1] + (src[i - 1] == tgt[j - 1] ? 0 : 1);
      const std::size_t up = cost[(i - 1) * width + j] + 1;
      const std::size_t left = cost[i * width + j - 1] + 1;
      cost[i * width + j] = std::min({diag, up, left});
    }
  }

  // Backtrace from the end, one token step at a time.
  std::vector<OpKind> steps;
  steps.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = cost[i * width + j];
    if (i > 0 && j > 0 && src[i - 1] == tgt[j - 1] &&
        cost[(i - 1) * width + j - 1] == here) {
      steps.push_back(OpKind::kEqual);
      --i;
      --j;
    } else if (i > 0 && j > 0 && cost[(i - 1) * width + j - 1] + 1 == here) {
      steps.push_back(OpKind::kSub);
      --i;
      --j;
    } else if (i > 0 && cost[(i - 1) * width + j] + 1 == here) {
      steps.push_back(OpKind::kDel);
      --i;
    } else {
      steps.push_back(OpKind::kIns);
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());

  AlignmentOpList ops;
  std::size_t si = 0;
  std::size_t ti = 0;
  for (const OpKind kind : steps) {
    const std::size_t ds = kind == OpKind::kIns ? 0 : 1;
    const std::size_t dt = kind == OpKind::kDel ? 0 : 1;
    if (!ops.empty() && ops.back().kind == kind) {
      ops.back().src.end += ds;
      ops.back().tgt.end += dt;
    } else {
      ops.push_back({kind, {si, si + ds}, {ti, ti + dt}});
    }
    si += ds;
    ti += dt;
  }
  return ops;
}

std::size_t AlignmentCost(const AlignmentOpList& ops) {
  const EditCounts counts = CountEdits(ops);
  return counts.errors();
}

EditCounts& EditCounts::operator+=(const EditCounts& other) {
  subs += other.subs;
  dels += other.dels;
  ins += other.ins;
  hits += other.hits;
  return *this;
}

EditCounts CountEdits(const AlignmentOpList& ops) {
  EditCounts counts;
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::kEqual:
        counts.hits += op.src.size();
        break;
      case OpKind::kSub:
        counts.subs += op.src.size();
        break;
      case OpKind::kIns:
        counts.ins += op.tgt.size();
        break;
      case OpKind::kDel:
        counts.dels += op.src.size();
        break;
    }
  }
  return counts;
}

EditCounts CountEdits(std::span<const std::string> src,
                      std::span<const std::string> tgt) {
  return CountEdits(Align(src, tgt));
}

namespace {

std::optional<double> Rate(std::size_t errors, std::size_t ref_length) {
  if (ref_length == 0) {
    if (errors == 0) return 0.0;
    return std::nullopt;
  }
  return static_cast<double>(errors) / static_cast<double>(ref_length);
}

}  // namespace

WerReport Wer(std::span<const std::string> ref,
              std::span<const std::string> hyp) {
  WerReport report;
  report.counts = CountEdits(ref, hyp);
  report.ref_length = ref.size();
  report.rate = Rate(report.counts.errors(), report.ref_length);
  return report;
}

WerReport CombineWer(std::span<const WerReport> reports) {
  WerReport total;
  for (const auto& r : reports) {
    total.counts += r.counts;
    total.ref_length += r.ref_length;
  }
  total.rate = Rate(total.counts.errors(), total.ref_length);
  return total;
}

}  // namespace sgec
