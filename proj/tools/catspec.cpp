// Copyright 2026 The catspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// catspec: parse English specifications into logical forms, check
// derivation certificates, run corpora and lint lexicons.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catspec/backends.hpp"
#include "catspec/certificate.hpp"
#include "catspec/corpus.hpp"
#include "catspec/lexicon.hpp"
#include "catspec/parser.hpp"
#include "catspec/syntax.hpp"

namespace {

using namespace catspec;

// Exit codes.  Documented in README.md; do not renumber.
constexpr int kOk = 0;
constexpr int kIoOrLint = 1;
constexpr int kAmbiguous = 2;
constexpr int kNoParse = 3;
constexpr int kResourceLimit = 4;
constexpr int kCertRejected = 5;
constexpr int kLintErrors = 6;
constexpr int kAuditFlags = 7;
constexpr int kCorpusFailures = 8;

struct CommonFlags {
  std::vector<std::string> lexicon;
  std::vector<std::string> features;
  int max_lift = Limits{}.max_lift;
  std::int64_t fuel = Limits{}.fuel;
  int max_entries = Limits{}.max_entries_per_word;
  bool no_eisner = false;
};

void AddCommon(CLI::App* app, CommonFlags* f) {
  app->add_option("--lexicon,-l", f->lexicon, "Lexicon file (repeatable; default: the demo lexicon)");
  app->add_option("--feature,-f", f->features, "Enable an optional lexicon feature (repeatable)");
  app->add_option("--max-lift", f->max_lift, "Bound on pointwise lifting of coordinators")->check(CLI::NonNegativeNumber);
  app->add_option("--fuel", f->fuel, "Rule-attempt budget")->check(CLI::PositiveNumber);
  app->add_option("--max-entries", f->max_entries, "Maximum entries per word")->check(CLI::PositiveNumber);
  app->add_flag("--no-eisner", f->no_eisner, "Disable normal-form pruning");
}

// Loads the lexicon, printing every problem.  Returns false on failure.
bool LoadLex(const std::vector<std::string>& paths, Lexicon* out) {
  std::vector<LexiconError> errors;
  *out = LoadLexiconFiles(paths.empty() ? DemoLexiconPaths() : paths, &errors);
  for (const auto& e : errors) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.expected().empty()) std::cerr << "  expected: " << e.expected() << "\n  found:    " << e.found() << "\n";
  }
  return errors.empty();
}

ParseOptions ToParseOptions(const CommonFlags& f) {
  ParseOptions o;
  o.limits = {f.max_lift, f.fuel, f.max_entries};
  o.features.insert(f.features.begin(), f.features.end());
  o.eisner = !f.no_eisner;
  return o;
}

bool WriteFile(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct ParseFlags {
  CommonFlags common;
  std::string sentence;
  std::string emit = "plain";
  std::string certificate;
  std::string name = "spec";
  bool all_parses = false;
  bool stubs = false;
  bool typed = false;
  bool unicode = false;
  bool stats = false;
};

int CmdParse(const ParseFlags& f) {
  Lexicon lex;
  if (!LoadLex(f.common.lexicon, &lex)) return kIoOrLint;
  EmitTarget target = EmitTargetFromName(f.emit);
  ParseOptions po = ToParseOptions(f.common);
  ParseResult r;
  try {
    r = Parse(f.sentence, lex, po);
  } catch (const UnknownWord& e) {
    std::cout << "unknown word: " << e.word() << "\n";
    if (!e.hints().empty()) {
      std::cout << "did you mean: ";
      for (std::size_t i = 0; i < e.hints().size(); ++i) std::cout << (i ? ", " : "") << e.hints()[i];
      std::cout << "\n";
    }
    return kNoParse;
  } catch (const EmptyInput& e) {
    std::cout << e.what() << "\n";
    return kNoParse;
  } catch (const NoParse& e) {
    std::cout << e.what() << "\n";
    return kNoParse;
  } catch (const FuelExhausted& e) {
    std::cout << e.what() << "\n";
    return kResourceLimit;
  } catch (const TooManyEntries& e) {
    std::cout << e.what() << "\n";
    return kResourceLimit;
  }
  if (f.stats) {
    std::cerr << "items " << r.stats.items << ", rule attempts " << r.stats.rule_attempts << ", pruned "
              << r.stats.pruned_by_normal_form << ", derivations " << r.derivations.size() << ", "
              << r.stats.wall_ms << " ms\n";
  }
  EmitOptions eo;
  eo.typed_binders = f.typed;
  eo.unicode = f.unicode;

  if (f.all_parses) {
    for (std::size_t i = 0; i < r.derivations.size(); ++i) {
      const Derivation& d = r.derivations[i];
      std::cout << "derivation " << i + 1 << ": " << PrintTerm(d.result()) << "\n" << RenderDerivation(d);
    }
  }
  Ambiguity amb = ClassifyAmbiguity(r);
  if (!amb.unique) {
    std::cout << "ambiguous: " << amb.classes.size() << " readings\n";
    for (std::size_t i = 0; i < amb.classes.size(); ++i) {
      std::cout << "  [" << i + 1 << "] " << PrintTerm(amb.classes[i].sem) << "  ("
                << amb.classes[i].derivations.size() << " derivation"
                << (amb.classes[i].derivations.size() == 1 ? "" : "s") << ")\n";
    }
    return kAmbiguous;
  }
  const Term& sem = amb.classes[0].sem;
  if (target == EmitTarget::kPlain && !f.stubs) {
    std::cout << EmitTerm(sem, target, lex.signature(), eo) << "\n";
  } else {
    std::cout << EmitTheorem(f.name, sem, target, lex.signature(), f.stubs, eo);
  }
  if (!f.certificate.empty()) {
    CertificateMeta meta{std::string("catspec ") + CATSPEC_VERSION, po.limits.max_lift, po.limits.fuel,
                         po.limits.max_entries_per_word, po.features};
    const Derivation& d = r.derivations[amb.classes[0].derivations[0]];
    if (!WriteFile(f.certificate, SerializeCertificate(EmitCertificate(d, lex.signature(), meta)))) return kIoOrLint;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct CheckFlags {
  std::string document;
  std::vector<std::string> lexicon;
};

int CmdCheckCert(const CheckFlags& f) {
  std::ifstream in(f.document, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << f.document << "\n";
    return kIoOrLint;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  Lexicon lex;
  bool live = !f.lexicon.empty();
  if (live && !LoadLex(f.lexicon, &lex)) return kIoOrLint;
  Verdict v;
  try {
    v = CheckCertificate(ParseCertificateText(ss.str()), live ? &lex : nullptr);
  } catch (const CertificateFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoOrLint;
  }
  if (v.accepted()) {
    std::cout << "accepted (" << (live ? "live" : "standalone") << ")\n";
    return kOk;
  }
  std::cout << "rejected: " << v.failures.size() << " failure" << (v.failures.size() == 1 ? "" : "s") << "\n";
  for (const auto& fl : v.failures) {
    std::cout << "  " << fl.path << ": " << FailureReasonName(fl.reason) << ": " << fl.detail << "\n";
  }
  return kCertRejected;
}

// ---------------------------------------------------------------------------

struct CorpusFlags {
  CommonFlags common;
  std::string file;
  std::string jsonl;
  std::string format = "table";
  int threads = 0;
  double budget_ms = 0;
  bool check_invariants = false;
};

int CmdCorpus(const CorpusFlags& f, const CLI::App& app) {
  CorpusFile corpus;
  try {
    corpus = LoadCorpus(f.file);
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoOrLint;
  }
  Lexicon lex;
  std::vector<std::string> paths = !f.common.lexicon.empty() ? f.common.lexicon : corpus.lexicon;
  if (!LoadLex(paths, &lex)) return kIoOrLint;
  try {
    ResolveCorpus(&corpus, lex);
  } catch (const CorpusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoOrLint;
  }
  RunOptions ro;
  ro.threads = f.threads;
  ro.eisner = !f.common.no_eisner;
  ro.check_invariants = f.check_invariants;
  if (app.count("--max-lift")) ro.max_lift = f.common.max_lift;
  if (app.count("--fuel")) ro.fuel = f.common.fuel;
  if (app.count("--max-entries")) ro.max_entries_per_word = f.common.max_entries;
  ro.extra_features.insert(f.common.features.begin(), f.common.features.end());
  if (f.budget_ms > 0) ro.budget_ms = f.budget_ms;
  std::vector<CaseResult> results = RunCorpus(corpus, lex, ro);

  std::string records;
  for (const auto& r : results) records += CaseRecord(r).dump() + "\n";
  if (f.format == "jsonl") {
    std::cout << records;
  } else {
    std::cout << FormatTable(results);
  }
  if (!f.jsonl.empty() && !WriteFile(f.jsonl, records)) return kIoOrLint;
  for (const auto& r : results) {
    if (!r.pass) return kCorpusFailures;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct LintFlags {
  std::vector<std::string> files;
  bool strict = false;
};

int CmdLint(const LintFlags& f) {
  std::vector<LexiconError> errors;
  Lexicon lex = LoadLexiconFiles(f.files.empty() ? DemoLexiconPaths() : f.files, &errors);
  bool io = false;
  for (const auto& e : errors) {
    io |= e.kind() == LexiconError::Kind::kIo;
    std::cout << "error: " << e.what() << "\n";
    if (!e.expected().empty()) std::cout << "  expected: " << e.expected() << "\n  found:    " << e.found() << "\n";
  }
  if (io) return kIoOrLint;
  if (!errors.empty()) return kLintErrors;
  std::vector<AuditFlag> flags = AmbiguityAudit(lex);
  for (const auto& fl : flags) {
    std::cout << "warning: '" << fl.word << "' has entries that can both apply as " << fl.unified_cat << ": "
              << fl.a.where.file << ":" << fl.a.where.line << " and " << fl.b.where.file << ":" << fl.b.where.line
              << "\n";
  }
  std::size_t entries = 0;
  for (const auto& [word, es] : lex.entries()) entries += es.size();
  std::cout << entries << " entries for " << lex.entries().size() << " words, " << flags.size() << " warning"
            << (flags.size() == 1 ? "" : "s") << "\n";
  if (!flags.empty() && f.strict) return kAuditFlags;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catspec: English specifications to logical forms"};
  app.set_version_flag("--version", std::string("catspec ") + CATSPEC_VERSION);
  app.require_subcommand(1);

  ParseFlags pf;
  CLI::App* parse = app.add_subcommand("parse", "Parse one sentence");
  AddCommon(parse, &pf.common);
  parse->add_option("sentence", pf.sentence, "The sentence")->required();
  parse->add_option("--emit,-e", pf.emit, "Output form")->check(CLI::IsMember({"plain", "lean", "lean4", "coq"}));
  parse->add_option("--certificate,-c", pf.certificate, "Write a derivation certificate ('-' for stdout)");
  parse->add_option("--name", pf.name, "Theorem name");
  parse->add_flag("--all-parses", pf.all_parses, "Print every surviving derivation");
  parse->add_flag("--stubs", pf.stubs, "Emit axioms for the signature the theorem uses");
  parse->add_flag("--typed", pf.typed, "Annotate binders with types");
  parse->add_flag("--unicode", pf.unicode, "Unicode connectives (Lean)");
  parse->add_flag("--stats", pf.stats, "Print chart statistics to stderr");

  CheckFlags cf;
  CLI::App* check = app.add_subcommand("check-cert", "Re-check a derivation certificate");
  check->add_option("document", cf.document, "Certificate file")->required();
  check->add_option("--lexicon,-l", cf.lexicon, "Check leaves against these lexicon files (default: standalone)");

  CorpusFlags rf;
  CLI::App* corpus = app.add_subcommand("corpus", "Run a corpus file");
  AddCommon(corpus, &rf.common);
  corpus->add_option("file", rf.file, "Corpus file")->required();
  corpus->add_option("--jsonl", rf.jsonl, "Also write line-delimited records to this file");
  corpus->add_option("--format", rf.format, "Standard output format")->check(CLI::IsMember({"table", "jsonl"}));
  corpus->add_option("--threads,-j", rf.threads, "Worker threads (0: one per core)");
  corpus->add_option("--budget-ms", rf.budget_ms, "Per-case time budget");
  corpus->add_flag("--check-invariants", rf.check_invariants, "Re-type every chart item");

  LintFlags lf;
  CLI::App* lint = app.add_subcommand("lint", "Lint lexicon files and audit ambiguity");
  lint->add_option("files", lf.files, "Lexicon files (default: the demo lexicon)");
  lint->add_flag("--strict", lf.strict, "Fail on ambiguity-audit warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kIoOrLint;
  }
  try {
    if (parse->parsed()) return CmdParse(pf);
    if (check->parsed()) return CmdCheckCert(cf);
    if (corpus->parsed()) return CmdCorpus(rf, *corpus);
    if (lint->parsed()) return CmdLint(lf);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoOrLint;
  }
  return kIoOrLint;
}
