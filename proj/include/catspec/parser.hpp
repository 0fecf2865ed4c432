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


// Span-indexed chart parser with normal-form pruning.

#ifndef CATSPEC_PARSER_HPP_
#define CATSPEC_PARSER_HPP_

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catspec/derivation.hpp"
#include "catspec/lexicon.hpp"

namespace catspec {

struct Limits {
  int max_lift = 2;
  std::int64_t fuel = 1000000;  // rule attempts
  int max_entries_per_word = 16;
};

struct ParseOptions {
  Limits limits;
  std::set<std::string> features;
  // Normal-form constraints on composition-produced items.
  bool eisner = true;
  // Re-type every chart item on insertion and count violations.
  bool check_invariants = false;
};

struct ParseStats {
  std::int64_t items = 0;
  std::int64_t rule_attempts = 0;  // fuel used
  std::int64_t pruned_by_normal_form = 0;
  std::int64_t nonground_roots = 0;
  std::int64_t invariant_checks = 0;
  std::int64_t invariant_violations = 0;
  double wall_ms = 0;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInput : public ParseError {
 public:
  EmptyInput() : ParseError("empty input") {}
};

class UnknownWord : public ParseError {
 public:
  UnknownWord(std::string word, std::vector<std::string> hints);
  const std::string& word() const { return word_; }
  const std::vector<std::string>& hints() const { return hints_; }

 private:
  std::string word_;
  std::vector<std::string> hints_;
};

class NoParse : public ParseError {
 public:
  explicit NoParse(ParseStats stats = {})
      : ParseError("no parse: no derivation of S spans the whole input"), stats_(stats) {}
  // The chart work done before giving up.
  const ParseStats& stats() const { return stats_; }

 private:
  ParseStats stats_;
};

class FuelExhausted : public ParseError {
 public:
  explicit FuelExhausted(std::int64_t fuel)
      : ParseError("fuel exhausted after " + std::to_string(fuel) + " rule attempts"), fuel_(fuel) {}
  std::int64_t fuel() const { return fuel_; }

 private:
  std::int64_t fuel_;
};

// A word has more enabled entries than Limits::max_entries_per_word.
class TooManyEntries : public ParseError {
 public:
  TooManyEntries(const std::string& word, int count, int limit)
      : ParseError("word '" + word + "' has " + std::to_string(count) + " entries, more than the limit of " +
                   std::to_string(limit)) {}
};

struct TokenSeq {
  std::vector<std::string> tokens;
  std::size_t size() const { return tokens.size(); }
};

TokenSeq Tokenize(std::string_view input);

struct SemClass {
  Term sem;  // betaNormalize then simplify
  std::vector<int> derivations;  // indices into ParseResult::derivations
};

struct ParseResult {
  std::vector<Derivation> derivations;
  std::vector<SemClass> classes;
  ParseStats stats;
};

// Throws EmptyInput, UnknownWord, NoParse, FuelExhausted or TooManyEntries.
ParseResult Parse(const TokenSeq& ts, const Lexicon& lex, const ParseOptions& opts = {});
ParseResult Parse(std::string_view sentence, const Lexicon& lex, const ParseOptions& opts = {});

// Test oracle: every binary bracketing, no normal-form constraints.  Returns
// the semantics classes only.  Requires at most 8 tokens.
std::vector<Term> NaiveEnumerate(const TokenSeq& ts, const Lexicon& lex, const ParseOptions& opts = {});

struct Ambiguity {
  bool unique = false;
  std::vector<SemClass> classes;  // each with one witness derivation first
};

Ambiguity ClassifyAmbiguity(const ParseResult& r);

// Groups terms by alpha-equivalence, keeping first occurrences in order.
std::vector<Term> DistinctUpToAlpha(const std::vector<Term>& terms);
bool SameClassSets(const std::vector<Term>& a, const std::vector<Term>& b);

}  // namespace catspec

#endif  // CATSPEC_PARSER_HPP_
