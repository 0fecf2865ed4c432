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

// Shared fixtures for the unit, property and acceptance tests.

#ifndef CATSPEC_TESTS_SUPPORT_HPP_
#define CATSPEC_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "catspec/corpus.hpp"
#include "catspec/lexicon.hpp"
#include "catspec/sem.hpp"

namespace catspec::testing {

const Lexicon& DemoLexicon();
const Lexicon& FuzzLexicon();
std::string FixturePath(const std::string& name);
std::string CorpusPath(const std::string& name);
std::string ReadFile(const std::string& path);

// A closed proposition in the demo signature (binder types inferred).
Term Prop(const std::string& text, const Lexicon& lex = DemoLexicon());

// Shipped corpus cases, resolved against their lexicon.
CorpusFile ShippedCorpus(const std::string& name);

// Sentences over the fuzz lexicon: about half follow sentence templates,
// the rest are random word strings.  Deterministic for a given seed.
std::vector<std::string> FuzzSentences(int count, std::uint32_t seed, int max_tokens = 7);

// Random closed, well-typed terms of the given type over sig.
class TermGen {
 public:
  TermGen(const Signature& sig, std::uint32_t seed) : sig_(sig), rng_(seed) {}
  Term Gen(const SemType& type, int depth);
  std::mt19937& rng() { return rng_; }

 private:
  struct Bound {
    std::string name;
    SemType type;
  };
  Term Leaf(const SemType& type);
  SemType RandomBase();
  const Signature& sig_;
  std::mt19937 rng_;
  std::vector<Bound> scope_;
  int next_name_ = 0;
};

// Single-field mutations of a certificate document.
struct Mutant {
  nlohmann::json doc;
  std::string field;        // JSON pointer of the changed field
  std::string kind;         // rule, span, cat, sem, entry-sem, result
  bool exempt = false;      // meaning-preserving: the change is alphaEq to the original
};

std::vector<Mutant> Mutants(const nlohmann::json& cert, const Signature& sig, std::uint32_t seed);

}  // namespace catspec::testing

#endif  // CATSPEC_TESTS_SUPPORT_HPP_
