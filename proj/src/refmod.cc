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

#include "sgec/refmod.h"

#include <algorithm>
#include <string>

#include "sgec/error.h"

namespace sgec {
namespace {

bool SameText(const Tokens& a, Span sa, const Tokens& b, Span sb) {
  return std::equal(a.begin() + sa.begin, a.begin() + sa.end,
                    b.begin() + sb.begin, b.begin() + sb.end);
}

void Append(Tokens& out, const Tokens& from, Span span) {
  out.insert(out.end(), from.begin() + span.begin, from.begin() + span.end);
}

}  // namespace

RefModOutput ModifyReference(const Tokens& flt_hyp, const Tokens& flt_ref,
                             const Tokens& gec_ref, RefModTrace* trace) {
  const AlignmentOpList primary = Align(gec_ref, flt_hyp);
  const AlignmentOpList corroborating = Align(gec_ref, flt_ref);

  RefModOutput out;
  std::vector<std::size_t> mild_kept;
  std::vector<std::size_t> strong_kept;

  for (std::size_t k = 0; k < primary.size(); ++k) {
    const AlignmentOp& op = primary[k];
    // Spans: src is over gec_ref, tgt over flt_hyp.
    if (op.kind == OpKind::kEqual) {
      Append(out.mild, gec_ref, op.src);
      Append(out.strong, gec_ref, op.src);
      mild_kept.push_back(k);
      strong_kept.push_back(k);
      continue;
    }

    bool keep_mild = false;
    bool keep_strong = false;
    if (op.kind == OpKind::kIns || op.kind == OpKind::kDel) {
      Append(out.mild, gec_ref, op.src);
      keep_mild = true;
    }

    for (const AlignmentOp& alt : corroborating) {
      if (alt.kind != op.kind || alt.src != op.src) continue;
      if (!SameText(flt_hyp, op.tgt, flt_ref, alt.tgt)) continue;
      Append(out.strong, gec_ref, alt.src);
      keep_strong = true;
      if (op.kind == OpKind::kSub) {
        Append(out.mild, gec_ref, alt.src);
        keep_mild = true;
      }
      break;
    }

    if (!keep_mild) Append(out.mild, flt_hyp, op.tgt);
    if (!keep_strong) Append(out.strong, flt_hyp, op.tgt);
    if (keep_mild) mild_kept.push_back(k);
    if (keep_strong) strong_kept.push_back(k);
  }

  if (trace != nullptr) {
    trace->primary = primary;
    trace->corroborating = corroborating;
    trace->mild_kept = std::move(mild_kept);
    trace->strong_kept = std::move(strong_kept);
  }
  return out;
}

ModifiedCorpora ModifyCorpus(const Corpus& hyps, const Corpus& refs,
                             const Corpus& gec_refs) {
  std::vector<std::string> bad;
  auto note = [&bad](const std::string& id) {
    if (std::find(bad.begin(), bad.end(), id) == bad.end()) bad.push_back(id);
  };
  for (const auto& seq : hyps.items()) {
    if (!refs.Contains(seq.utt_id) || !gec_refs.Contains(seq.utt_id)) {
      note(seq.utt_id);
    }
  }
  for (const Corpus* other : {&refs, &gec_refs}) {
    for (const auto& seq : other->items()) {
      if (!hyps.Contains(seq.utt_id)) note(seq.utt_id);
    }
  }
  if (!bad.empty()) {
    std::string msg = "utterance ids not shared by hyp, ref and gec corpora:";
    for (const auto& id : bad) msg += " " + id;
    throw Error(ErrorCode::kValidation, msg);
  }

  ModifiedCorpora out;
  out.mild.reserve(hyps.size());
  out.strong.reserve(hyps.size());
  for (const auto& hyp : hyps.items()) {
    const TokenSequence& ref = *refs.Find(hyp.utt_id);
    const TokenSequence& gec = *gec_refs.Find(hyp.utt_id);
    RefModOutput mod = ModifyReference(hyp.tokens, ref.tokens, gec.tokens);
    out.mild.push_back({hyp.utt_id, std::move(mod.mild)});
    out.strong.push_back({hyp.utt_id, std::move(mod.strong)});
  }
  return out;
}

}  // namespace sgec
