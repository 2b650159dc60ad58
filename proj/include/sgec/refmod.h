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

#ifndef SGEC_REFMOD_H_
#define SGEC_REFMOD_H_

#include <cstddef>
#include <vector>

#include "sgec/align.h"
#include "sgec/corpusio.h"
#include "sgec/types.h"

namespace sgec {

// Rewrites a GEC reference so that discrepancies caused by recognition errors
// in the fluent hypothesis do not surface as corrections.
//
// Two alignments are built against the GEC reference C: one to the fluent
// hypothesis H (primary) and one to the fluent reference R (corroborating).
// Equal regions copy C. For every other primary opcode:
//
//  * mild keeps C unconditionally for ins/del opcodes;
//  * an opcode is corroborated when the corroborating alignment contains an
//    opcode of the same kind over the same C span whose R text equals the
//    primary opcode's H text. Corroborated opcodes keep C in strong, and
//    corroborated subs keep C in mild as well;
//  * wherever C was not kept, the H text is emitted instead.
//
// When H equals R the two alignments coincide and the result is (C, C).
struct RefModOutput {
  Tokens mild;
  Tokens strong;

  friend bool operator==(const RefModOutput&, const RefModOutput&) = default;
};

// Indices into Align(C, H) of the opcodes whose output came from C.
struct RefModTrace {
  AlignmentOpList primary;
  AlignmentOpList corroborating;
  std::vector<std::size_t> mild_kept;
  std::vector<std::size_t> strong_kept;
};

RefModOutput ModifyReference(const Tokens& flt_hyp, const Tokens& flt_ref,
                             const Tokens& gec_ref,
                             RefModTrace* trace = nullptr);

struct ModifiedCorpora {
  std::vector<TokenSequence> mild;
  std::vector<TokenSequence> strong;
};

// Per-utterance ModifyReference in the order of `hyps`. Throws
// Error(kValidation) listing every id not shared by all three corpora.
ModifiedCorpora ModifyCorpus(const Corpus& hyps, const Corpus& refs,
                             const Corpus& gec_refs);

}  // namespace sgec

#endif  // SGEC_REFMOD_H_
