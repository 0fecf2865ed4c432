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


// Derivation trees: the parser's output and the certificate's content.

#ifndef CATSPEC_DERIVATION_HPP_
#define CATSPEC_DERIVATION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catspec/grammar.hpp"
#include "catspec/lexicon.hpp"
#include "catspec/sem.hpp"

namespace catspec {

enum class Rule { kLex, kFA, kBA, kFC, kBC, kLift, kCoord };

const char* RuleName(Rule r);
std::optional<Rule> RuleFromName(const std::string& name);
bool IsLeafRule(Rule r);

// Semantics of the adjective lift ADJ<x> => CN<x>/CN<x>, as a function of
// the adjective: \p. \n. \v. n v /\ p v.
Term AdjectiveLiftSem(const SemType& index);
Cat AdjectiveLiftCat(const Cat& adj);
// Category (X\X)/X and semantics of a coordinator instantiated at X, or
// nullopt if X is not Prop-like within max_lift.
struct Coordination {
  Cat cat;
  Term sem;
};
std::optional<Coordination> InstantiateCoordinator(Term::Kind op, const Cat& x, int max_lift);

const char* CoordOpName(Term::Kind op);
std::optional<Term::Kind> CoordOpFromName(const std::string& name);

struct DerivNode {
  Rule rule = Rule::kLex;
  int start = 0, end = 0;
  Cat cat;
  Term sem;  // beta-normal, ground for complete parses
  // Leaves.
  std::string token;
  std::optional<LexEntry> entry;  // LEX leaves backed by the lexicon
  bool numeral = false;           // LEX leaves for numeric tokens
  Term::Kind coord_op = Term::Kind::kAnd;
  std::vector<std::shared_ptr<const DerivNode>> kids;  // unary: 1, binary: 2

  int leaf_count() const;
  int node_count() const;
};

using DerivPtr = std::shared_ptr<const DerivNode>;

struct Derivation {
  std::vector<std::string> tokens;
  DerivPtr root;
  // Root semantics after beta normalization and guard simplification.
  Term result() const;
};

// Multi-line rendering of a derivation tree, leaves first.
std::string RenderDerivation(const Derivation& d);

}  // namespace catspec

#endif  // CATSPEC_DERIVATION_HPP_
