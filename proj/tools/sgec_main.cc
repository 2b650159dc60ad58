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

// Command-line front end: wer, edits, refmod, score, filter, sweep, validate.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "sgec/align.h"
#include "sgec/confidence.h"
#include "sgec/corpusio.h"
#include "sgec/edits.h"
#include "sgec/error.h"
#include "sgec/refmod.h"
#include "sgec/score.h"

namespace sgec {
namespace {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitFormat = 3,
  kExitValidation = 4,
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kFormat:
    case ErrorCode::kStructural:
      return kExitFormat;
    case ErrorCode::kValidation:
    case ErrorCode::kAlignment:
      return kExitValidation;
  }
  return kExitUsage;
}

struct GlobalOptions {
  bool keep_punct = false;
  bool keep_case = false;
  bool json = false;

  NormConfig norm() const {
    NormConfig config;
    config.strip_punct = !keep_punct;
    config.lowercase = !keep_case;
    return config;
  }
};

void Emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    WriteFile(path, content);
  }
}

[[noreturn]] void FailValidation(const ValidationReport& report) {
  throw Error(ErrorCode::kValidation,
              "inputs are inconsistent:\n" + report.ToString());
}

std::string FormatRate(const std::optional<double>& rate) {
  if (!rate) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", *rate * 100.0);
  return buf;
}

nlohmann::ordered_json WerJson(const WerReport& r) {
  nlohmann::ordered_json doc;
  doc["wer"] = r.rate ? nlohmann::ordered_json(*r.rate)
                      : nlohmann::ordered_json(nullptr);
  doc["errors"] = r.counts.errors();
  doc["ref_tokens"] = r.ref_length;
  doc["subs"] = r.counts.subs;
  doc["dels"] = r.counts.dels;
  doc["ins"] = r.counts.ins;
  doc["hits"] = r.counts.hits;
  return doc;
}

std::string WerLine(const WerReport& r) {
  return "WER " + FormatRate(r.rate) + " [ " +
         std::to_string(r.counts.errors()) + " / " +
         std::to_string(r.ref_length) + ", " + std::to_string(r.counts.ins) +
         " ins, " + std::to_string(r.counts.dels) + " del, " +
         std::to_string(r.counts.subs) + " sub ]";
}

// ---------------------------------------------------------------- wer

struct WerArgs {
  std::string ref;
  std::string hyp;
  bool per_utt = false;
};

int RunWer(const GlobalOptions& g, const WerArgs& args) {
  CorpusBundle bundle;
  bundle.flt_ref = LoadCorpus(args.ref, g.norm());
  bundle.flt_hyp = LoadCorpus(args.hyp, g.norm());
  if (auto report = ValidateBundle(bundle, g.norm()); !report.ok()) {
    FailValidation(report);
  }
  std::vector<WerReport> reports;
  std::vector<std::string> ids;
  for (const auto& ref : bundle.flt_ref->items()) {
    reports.push_back(Wer(ref.tokens, bundle.flt_hyp->Find(ref.utt_id)->tokens));
    ids.push_back(ref.utt_id);
  }
  const WerReport total = CombineWer(reports);

  if (g.json) {
    nlohmann::ordered_json doc = WerJson(total);
    if (args.per_utt) {
      nlohmann::ordered_json utts = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) {
        nlohmann::ordered_json u = WerJson(reports[i]);
        u["utt_id"] = ids[i];
        utts.push_back(std::move(u));
      }
      doc["utterances"] = std::move(utts);
    }
    Emit("", doc.dump() + "\n");
    return kExitOk;
  }
  std::string out;
  if (args.per_utt) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out += ids[i] + "\t" + WerLine(reports[i]) + "\n";
    }
  }
  out += WerLine(total) + "\n";
  Emit("", out);
  return kExitOk;
}

// ---------------------------------------------------------------- edits

struct EditsArgs {
  std::string flt;
  std::string gec;
  std::string parse;
  std::string out;
};

// Edit sets for every utterance of `flt`, paired with `gec` by id.
std::vector<EditSet> ExtractCorpusEdits(const Corpus& flt, const Corpus& gec) {
  std::vector<EditSet> sets;
  sets.reserve(flt.size());
  for (const auto& seq : flt.items()) {
    sets.push_back(ExtractEdits(seq, *gec.Find(seq.utt_id)));
  }
  return sets;
}

int RunEdits(const GlobalOptions& g, const EditsArgs& args) {
  if (!args.parse.empty()) {
    Emit(args.out, WriteM2(ParseM2(ReadFile(args.parse))));
    return kExitOk;
  }
  if (args.flt.empty() || args.gec.empty()) {
    throw CLI::ValidationError("edits", "needs --flt and --gec, or --parse");
  }
  CorpusBundle bundle;
  bundle.flt_hyp = LoadCorpus(args.flt, g.norm());
  bundle.gec_hyp = LoadCorpus(args.gec, g.norm());
  if (auto report = ValidateBundle(bundle, g.norm()); !report.ok()) {
    FailValidation(report);
  }
  Emit(args.out, WriteM2(ExtractCorpusEdits(*bundle.flt_hyp, *bundle.gec_hyp)));
  return kExitOk;
}

// ---------------------------------------------------------------- refmod

struct RefmodArgs {
  std::string hyp;
  std::string ref;
  std::string gec;
  std::string out_mild;
  std::string out_strong;
};

int RunRefmod(const GlobalOptions& g, const RefmodArgs& args) {
  const Corpus hyps = LoadCorpus(args.hyp, g.norm());
  const Corpus refs = LoadCorpus(args.ref, g.norm());
  const Corpus gecs = LoadCorpus(args.gec, g.norm());
  const ModifiedCorpora out = ModifyCorpus(hyps, refs, gecs);
  WriteFile(args.out_mild, WriteCorpus(out.mild));
  WriteFile(args.out_strong, WriteCorpus(out.strong));
  return kExitOk;
}

// ------------------------------------------------- score / filter / sweep

struct EvalArgs {
  std::string flt_hyp;
  std::string gec_hyp;
  std::string hyp_m2;
  std::string flt_ref;
  std::string gec_ref;
  std::string ref_m2;
  std::string flt_conf;
  std::string gec_conf;
  std::string mode = "avg";
  std::optional<double> threshold;
  double default_fill = 1.0;
  std::vector<double> thresholds;
  std::size_t steps = 101;
  std::string out;
};

struct EditSide {
  std::vector<EditSet> sets;
  bool by_id = false;  // false: sets came from M2 and are keyed by position
};

EditSide LoadSide(const std::string& flt, const std::string& gec,
                  const std::string& m2, const char* role,
                  const NormConfig& norm, CorpusBundle& bundle, bool hyp) {
  EditSide side;
  if (!m2.empty()) {
    if (!flt.empty() || !gec.empty()) {
      throw CLI::ValidationError(role, "give either transcripts or an M2 file");
    }
    side.sets = ParseM2(ReadFile(m2));
    return side;
  }
  if (flt.empty() || gec.empty()) {
    throw CLI::ValidationError(
        role, std::string("needs --flt-") + role + " and --gec-" + role +
                  ", or --" + role + "-m2");
  }
  auto& flt_slot = hyp ? bundle.flt_hyp : bundle.flt_ref;
  auto& gec_slot = hyp ? bundle.gec_hyp : bundle.gec_ref;
  flt_slot = LoadCorpus(flt, norm);
  gec_slot = LoadCorpus(gec, norm);
  side.by_id = true;
  return side;
}

struct LoadedEval {
  EditSide hyp;
  EditSide ref;
  bool scored = false;
};

FilterPolicy PolicyFrom(const EvalArgs& args) {
  const auto mode = ParseConfidenceMode(args.mode);
  if (!mode) {
    throw CLI::ValidationError("--mode", "unknown confidence mode '" +
                                             args.mode + "'");
  }
  FilterPolicy policy{*mode, args.threshold.value_or(0.0), args.default_fill};
  policy.Validate();
  return policy;
}

// Reads hypothesis (and optionally reference) edits, validates pairing, and
// attaches edit confidences when confidence files are given.
LoadedEval LoadEval(const GlobalOptions& g, const EvalArgs& args,
                    bool need_ref, bool need_conf) {
  const NormConfig norm = g.norm();
  CorpusBundle bundle;
  LoadedEval loaded;
  loaded.hyp = LoadSide(args.flt_hyp, args.gec_hyp, args.hyp_m2, "hyp", norm,
                        bundle, true);
  if (need_ref) {
    loaded.ref = LoadSide(args.flt_ref, args.gec_ref, args.ref_m2, "ref", norm,
                          bundle, false);
  }

  const FilterPolicy policy = PolicyFrom(args);
  const bool have_conf = !args.flt_conf.empty() || !args.gec_conf.empty();
  if (need_conf || have_conf) {
    if (UsesFltSide(policy.mode) && args.flt_conf.empty()) {
      throw CLI::ValidationError("--flt-conf", "required by mode " + args.mode);
    }
    if (UsesGecSide(policy.mode) && args.gec_conf.empty()) {
      throw CLI::ValidationError("--gec-conf", "required by mode " + args.mode);
    }
  }
  if (!args.flt_conf.empty()) bundle.flt_conf = LoadConfidence(args.flt_conf);
  if (!args.gec_conf.empty()) bundle.gec_conf = LoadConfidence(args.gec_conf);

  if (loaded.hyp.by_id) {
    // Positional M2 sides are checked by count below instead.
    CorpusBundle check = bundle;
    if (!loaded.ref.by_id) check.flt_ref.reset(), check.gec_ref.reset();
    if (auto report = ValidateBundle(check, norm); !report.ok()) {
      FailValidation(report);
    }
    loaded.hyp.sets = ExtractCorpusEdits(*bundle.flt_hyp, *bundle.gec_hyp);
  } else {
    const std::size_t n = loaded.hyp.sets.size();
    for (const auto* conf : {&bundle.flt_conf, &bundle.gec_conf}) {
      if (*conf && (*conf)->size() != n) {
        throw Error(ErrorCode::kValidation,
                    "confidence file has " + std::to_string((*conf)->size()) +
                        " entries for " + std::to_string(n) +
                        " M2 utterances");
      }
    }
  }
  if (need_ref && loaded.ref.by_id) {
    if (auto report = ValidateBundle(
            CorpusBundle{std::nullopt, bundle.flt_ref, std::nullopt,
                         bundle.gec_ref, std::nullopt, std::nullopt},
            norm);
        !report.ok()) {
      FailValidation(report);
    }
    loaded.ref.sets = ExtractCorpusEdits(*bundle.flt_ref, *bundle.gec_ref);
  }

  if (bundle.flt_conf || bundle.gec_conf) {
    std::map<std::string, const ConfidenceEntry*> flt_by_id;
    std::map<std::string, const ConfidenceEntry*> gec_by_id;
    if (bundle.flt_conf) {
      for (const auto& e : *bundle.flt_conf) flt_by_id[e.utt_id] = &e;
    }
    if (bundle.gec_conf) {
      for (const auto& e : *bundle.gec_conf) gec_by_id[e.utt_id] = &e;
    }
    for (std::size_t i = 0; i < loaded.hyp.sets.size(); ++i) {
      EditSet& set = loaded.hyp.sets[i];
      auto side = [&](const std::optional<std::vector<ConfidenceEntry>>& conf,
                      std::map<std::string, const ConfidenceEntry*>& by_id,
                      bool use, Tokens tokens) {
        if (!use || !conf) return UniformConfidence({set.utt_id, tokens}, 1.0);
        ConfidenceEntry entry =
            loaded.hyp.by_id ? *by_id.at(set.utt_id) : (*conf)[i];
        entry.utt_id = set.utt_id;
        return AttachConfidence({set.utt_id, std::move(tokens)}, entry, norm);
      };
      const auto flt = side(bundle.flt_conf, flt_by_id,
                            UsesFltSide(policy.mode), set.source);
      const auto gec = side(bundle.gec_conf, gec_by_id,
                            UsesGecSide(policy.mode), ApplyEdits(set).tokens);
      ScoreEdits(set, flt, gec, policy);
    }
    loaded.scored = true;
  }
  return loaded;
}

std::vector<UtteranceEval> PairForScoring(LoadedEval& loaded) {
  auto& hyps = loaded.hyp.sets;
  auto& refs = loaded.ref.sets;
  std::vector<UtteranceEval> corpus;
  corpus.reserve(hyps.size());
  if (loaded.hyp.by_id && loaded.ref.by_id) {
    std::map<std::string, EditSet*> by_id;
    for (auto& r : refs) by_id[r.utt_id] = &r;
    std::vector<std::string> missing;
    for (const auto& h : hyps) {
      if (!by_id.contains(h.utt_id)) missing.push_back(h.utt_id);
    }
    if (!missing.empty() || hyps.size() != refs.size()) {
      std::string msg = "hypothesis and reference utterance ids differ:";
      for (const auto& id : missing) msg += " " + id;
      throw Error(ErrorCode::kValidation, msg);
    }
    for (auto& h : hyps) {
      corpus.push_back(MakeUtteranceEval(std::move(h), *by_id[h.utt_id]));
    }
    return corpus;
  }
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::kValidation,
                std::to_string(hyps.size()) + " hypothesis vs " +
                    std::to_string(refs.size()) +
                    " reference utterances; positional pairing needs equal "
                    "counts");
  }
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    corpus.push_back(MakeUtteranceEval(std::move(hyps[i]), refs[i]));
  }
  return corpus;
}

int RunScore(const GlobalOptions& g, const EvalArgs& args) {
  LoadedEval loaded = LoadEval(g, args, /*need_ref=*/true,
                               /*need_conf=*/args.threshold.has_value());
  const std::vector<UtteranceEval> corpus = PairForScoring(loaded);
  ScoreReport report;
  if (args.threshold) {
    const double tau[] = {*args.threshold};
    report = Sweep(corpus, tau).front().report;
  } else {
    report = ScoreCorpus(corpus);
  }
  Emit(args.out, g.json ? ScoreReportJson(report) : ScoreReportText(report));
  return kExitOk;
}

int RunFilter(const GlobalOptions& g, const EvalArgs& args) {
  if (!args.threshold) {
    throw CLI::ValidationError("--threshold", "filter needs a threshold");
  }
  LoadedEval loaded = LoadEval(g, args, /*need_ref=*/false, /*need_conf=*/true);
  const FilterPolicy policy = PolicyFrom(args);
  std::vector<EditSet> kept;
  kept.reserve(loaded.hyp.sets.size());
  for (const auto& set : loaded.hyp.sets) {
    kept.push_back(FilterEdits(set, policy));
  }
  Emit(args.out, WriteM2(kept));
  return kExitOk;
}

int RunSweep(const GlobalOptions& g, const EvalArgs& args) {
  LoadedEval loaded = LoadEval(g, args, /*need_ref=*/true, /*need_conf=*/true);
  const std::vector<UtteranceEval> corpus = PairForScoring(loaded);
  const std::vector<double> thresholds =
      args.thresholds.empty() ? UniformThresholds(args.steps) : args.thresholds;
  Emit(args.out, SweepTsv(Sweep(corpus, thresholds)));
  return kExitOk;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string flt_hyp;
  std::string flt_ref;
  std::string gec_hyp;
  std::string gec_ref;
  std::string flt_conf;
  std::string gec_conf;
};

int RunValidate(const GlobalOptions& g, const ValidateArgs& args) {
  CorpusBundle bundle;
  auto load = [&g](const std::string& path, std::optional<Corpus>& slot) {
    if (!path.empty()) slot = LoadCorpus(path, g.norm());
  };
  load(args.flt_hyp, bundle.flt_hyp);
  load(args.flt_ref, bundle.flt_ref);
  load(args.gec_hyp, bundle.gec_hyp);
  load(args.gec_ref, bundle.gec_ref);
  if (!args.flt_conf.empty()) bundle.flt_conf = LoadConfidence(args.flt_conf);
  if (!args.gec_conf.empty()) bundle.gec_conf = LoadConfidence(args.gec_conf);

  const ValidationReport report = ValidateBundle(bundle, g.norm());
  if (g.json) {
    nlohmann::ordered_json doc;
    doc["ok"] = report.ok();
    doc["issues"] = nlohmann::ordered_json::array();
    for (const auto& issue : report.issues) {
      doc["issues"].push_back({{"member", issue.member},
                               {"utt_id", issue.utt_id},
                               {"message", issue.message}});
    }
    Emit("", doc.dump() + "\n");
  } else {
    Emit("", report.ok() ? std::string("OK\n") : report.ToString());
  }
  return report.ok() ? kExitOk : kExitValidation;
}

void AddEvalInputs(CLI::App* cmd, EvalArgs& args, bool with_ref) {
  cmd->add_option("--flt-hyp", args.flt_hyp, "Fluent hypothesis TSV");
  cmd->add_option("--gec-hyp", args.gec_hyp, "GEC hypothesis TSV");
  cmd->add_option("--hyp-m2", args.hyp_m2, "Hypothesis edits as M2");
  if (with_ref) {
    cmd->add_option("--flt-ref", args.flt_ref, "Fluent reference TSV");
    cmd->add_option("--gec-ref", args.gec_ref, "GEC reference TSV");
    cmd->add_option("--ref-m2", args.ref_m2, "Reference edits as M2");
  }
  cmd->add_option("--flt-conf", args.flt_conf,
                  "Fluent-side token confidences (JSONL)");
  cmd->add_option("--gec-conf", args.gec_conf,
                  "GEC-side token confidences (JSONL)");
  cmd->add_option("--mode", args.mode,
                  "How edit confidence combines token confidences")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"flt_avg", "flt_min", "gec_avg", "gec_min", "avg", "min"}));
  cmd->add_option("--default-fill", args.default_fill,
                  "Confidence for the absent side of M/U edits")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("-o,--out", args.out, "Output path (default stdout)");
}

int Main(int argc, char** argv) {
  CLI::App app{"Spoken GEC text tooling: alignment, edits, reference "
               "modification, confidence filtering and scoring."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");

  GlobalOptions g;
  app.add_flag("--norm-keep-punct", g.keep_punct,
               "Do not strip leading/trailing punctuation");
  app.add_flag("--norm-keep-case", g.keep_case, "Do not lowercase");
  app.add_flag("--json", g.json, "Machine-readable output");

  WerArgs wer;
  auto* wer_cmd = app.add_subcommand("wer", "Word error rate");
  wer_cmd->add_option("--ref", wer.ref, "Reference TSV")->required();
  wer_cmd->add_option("--hyp", wer.hyp, "Hypothesis TSV")->required();
  wer_cmd->add_flag("--per-utt", wer.per_utt, "Also report each utterance");

  EditsArgs edits;
  auto* edits_cmd = app.add_subcommand("edits", "Extract R/M/U edits to M2");
  edits_cmd->add_option("--flt", edits.flt, "Fluent transcript TSV");
  edits_cmd->add_option("--gec", edits.gec, "Corrected transcript TSV");
  edits_cmd->add_option("--parse", edits.parse,
                        "Parse an M2 file and write it back canonically");
  edits_cmd->add_option("-o,--out", edits.out, "Output path (default stdout)");

  RefmodArgs refmod;
  auto* refmod_cmd =
      app.add_subcommand("refmod", "Build mild and strong GEC references");
  refmod_cmd->add_option("--hyp", refmod.hyp, "Fluent hypothesis TSV")->required();
  refmod_cmd->add_option("--ref", refmod.ref, "Fluent reference TSV")->required();
  refmod_cmd->add_option("--gec", refmod.gec, "GEC reference TSV")->required();
  refmod_cmd->add_option("--out-mild", refmod.out_mild)->required();
  refmod_cmd->add_option("--out-strong", refmod.out_strong)->required();

  EvalArgs score;
  auto* score_cmd = app.add_subcommand("score", "Precision, recall and F0.5");
  AddEvalInputs(score_cmd, score, true);
  score_cmd
      ->add_option("--threshold,--confidence", score.threshold,
                   "Drop hypothesis edits below this confidence")
      ->check(CLI::Range(0.0, 1.0));

  EvalArgs filter;
  auto* filter_cmd =
      app.add_subcommand("filter", "Drop low-confidence hypothesis edits");
  AddEvalInputs(filter_cmd, filter, false);
  filter_cmd->add_option("--threshold", filter.threshold, "Confidence threshold")
      ->required()
      ->check(CLI::Range(0.0, 1.0));

  EvalArgs sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Score across confidence thresholds");
  AddEvalInputs(sweep_cmd, sweep, true);
  sweep_cmd->add_option("--thresholds", sweep.thresholds,
                        "Comma-separated ascending thresholds")
      ->delimiter(',');
  sweep_cmd->add_option("--steps", sweep.steps,
                        "Evenly spaced thresholds over [0, 1]")
      ->capture_default_str();

  ValidateArgs validate;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check that corpus files agree");
  validate_cmd->add_option("--flt-hyp", validate.flt_hyp);
  validate_cmd->add_option("--flt-ref", validate.flt_ref);
  validate_cmd->add_option("--gec-hyp", validate.gec_hyp);
  validate_cmd->add_option("--gec-ref", validate.gec_ref);
  validate_cmd->add_option("--flt-conf", validate.flt_conf);
  validate_cmd->add_option("--gec-conf", validate.gec_conf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*wer_cmd) return RunWer(g, wer);
    if (*edits_cmd) return RunEdits(g, edits);
    if (*refmod_cmd) return RunRefmod(g, refmod);
    if (*score_cmd) return RunScore(g, score);
    if (*filter_cmd) return RunFilter(g, filter);
    if (*sweep_cmd) return RunSweep(g, sweep);
    if (*validate_cmd) return RunValidate(g, validate);
  } catch (const CLI::Error& e) {
    std::cerr << "sgec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "sgec: " << ErrorCodeName(e.code()) << " error: " << e.what()
              << "\n";
    return ExitCodeFor(e.code());
  }
  return kExitUsage;
}

}  // namespace
}  // namespace sgec

int main(int argc, char** argv) { return sgec::Main(argc, argv); }
