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

// Corpus files: sentences with expected readings, run as a batch.
// See docs/corpus-format.md.

#ifndef CATSPEC_CORPUS_HPP_
#define CATSPEC_CORPUS_HPP_

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catspec/lexicon.hpp"
#include "catspec/parser.hpp"

namespace catspec {

enum class ExpectMode { kAlphaEq, kTrueAmbiguity, kNoParse };

const char* ExpectModeName(ExpectMode m);

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusCase {
  std::string id;
  std::string sentence;
  ExpectMode mode = ExpectMode::kAlphaEq;
  std::string expect_text;       // alphaEq only
  std::optional<Term> expected;  // filled by ResolveCorpus
  std::optional<int> classes;    // trueAmbiguity: required class count
  std::set<std::string> features;
  Limits limits;
  std::string note;
};

struct CorpusFile {
  std::string path;
  std::vector<std::string> lexicon;  // resolved against the corpus directory
  double budget_ms = 2000;
  std::vector<CorpusCase> cases;
};

CorpusFile LoadCorpus(const std::string& path);
CorpusFile ParseCorpus(const std::string& text, const std::string& path);
// Elaborates every expected term against lex's signature.
void ResolveCorpus(CorpusFile* file, const Lexicon& lex);

struct CaseResult {
  std::string id;
  bool pass = false;
  // Unique, TrueAmbiguity, NoParse, UnknownWord, FuelExhausted,
  // TooManyEntries or Error.
  std::string status;
  std::vector<std::string> readings;  // printed semantics classes
  std::string detail;
  std::int64_t derivations = 0;
  ParseStats stats;
  double wall_ms = 0;
};

struct RunOptions {
  int threads = 0;  // 0: hardware concurrency
  bool eisner = true;
  bool check_invariants = false;
  // When set, replace every case's limits.
  std::optional<int> max_lift;
  std::optional<std::int64_t> fuel;
  std::optional<int> max_entries_per_word;
  std::set<std::string> extra_features;
  std::optional<double> budget_ms;
};

CaseResult RunCase(const CorpusCase& c, const Lexicon& lex, const RunOptions& opts, double budget_ms);
// Results come back in input order.
std::vector<CaseResult> RunCorpus(const CorpusFile& file, const Lexicon& lex, const RunOptions& opts = {});

std::string FormatTable(const std::vector<CaseResult>& results);
nlohmann::json CaseRecord(const CaseResult& r);

}  // namespace catspec

#endif  // CATSPEC_CORPUS_HPP_
