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


// Grammatical categories and their semantic interpretation.
//
// Surface syntax:
//   S | NP<t> | ADJ<t> | CN<t> | PP[prep]<t> | Name<t1, ...> | (c) | c/c | c\c
// '/' associates to the left and '\' to the right; mixing the two without
// parentheses is rejected.  Name<...> expands a category macro.

#ifndef CATSPEC_GRAMMAR_HPP_
#define CATSPEC_GRAMMAR_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catspec/sem.hpp"

namespace catspec {

class Cat {
 public:
  enum class Kind : std::uint8_t { kS, kNP, kADJ, kCN, kPP, kRSlash, kLSlash };

  Cat();  // S

  static Cat S();
  static Cat NP(SemType index);
  static Cat Adj(SemType index);
  static Cat CN(SemType index);
  static Cat PP(std::string prep, SemType index);
  static Cat Indexed(Kind kind, SemType index, std::string prep = {});
  // result/arg: looks right for arg.
  static Cat RSlash(Cat result, Cat arg);
  // arg\result: looks left for arg.
  static Cat LSlash(Cat arg, Cat result);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_slash() const { return kind() == Kind::kRSlash || kind() == Kind::kLSlash; }
  const SemType& index() const;
  const std::string& prep() const;
  const Cat& result() const;
  const Cat& arg() const;

  bool is_ground() const;
  void CollectVars(std::set<std::string>* out) const;
  std::string str() const;

  friend bool operator==(const Cat& a, const Cat& b);
  friend bool operator!=(const Cat& a, const Cat& b) { return !(a == b); }
  friend bool operator<(const Cat& a, const Cat& b);

 private:
  struct Node;
  explicit Cat(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SemType Interp(const Cat& c);

struct LiftSpec {
  int depth = 0;
  std::vector<SemType> arg_types;
  // arg_types[0] -> ... -> Prop
  SemType lifted() const;
};

std::optional<LiftSpec> PropLike(const Cat& c);

// Pointwise lifting of a binary connective (kAnd, kOr or kImplies):
// \P. \Q. \x1 ... xd. op (P x1 .. xd) (Q x1 .. xd).
Term LiftOp(Term::Kind op, const LiftSpec& spec);

bool UnifyCats(const Cat& a, const Cat& b, TypeSubst* s, UnifyError* why = nullptr);
Cat ApplySubst(const TypeSubst& s, const Cat& c);
Cat MapIndices(const Cat& c, const std::function<SemType(const SemType&)>& f);

struct CatMacro {
  std::vector<std::string> params;
  Cat body;  // indices mention params as type variables
};

using MacroTable = std::map<std::string, CatMacro>;

// The built-in Quant<A> = (S/(NP<A>\S))/CN<A>.
const MacroTable& BuiltinMacros();

Cat ParseCat(std::string_view text, const Signature* sig, const std::vector<std::string>& ty_vars = {},
             const MacroTable* macros = nullptr);

}  // namespace catspec

#endif  // CATSPEC_GRAMMAR_HPP_
