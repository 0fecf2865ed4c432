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

// Semantic types and typed lambda terms of the target logic, together with
// the operations the parser and the certificate checker rely on: type
// checking, beta normalization, guard simplification, alpha-equivalence and
// first-order type unification.

#ifndef CATSPEC_SEM_HPP_
#define CATSPEC_SEM_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace catspec {

class SemType {
 public:
  enum class Kind : std::uint8_t { kTruth, kBase, kArrow, kProd, kVar };

  SemType();  // Truth

  static SemType Truth();
  static SemType Base(std::string name);
  static SemType Arrow(SemType domain, SemType codomain);
  static SemType Prod(SemType left, SemType right);
  static SemType Var(std::string id);
  // Right-nested arrow args[0] -> args[1] -> ... -> result.
  static SemType Arrows(const std::vector<SemType>& args, SemType result);

  Kind kind() const;
  bool is_truth() const { return kind() == Kind::kTruth; }
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_arrow() const { return kind() == Kind::kArrow; }
  bool is_prod() const { return kind() == Kind::kProd; }

  // Base name or type variable id.
  const std::string& name() const;
  // Domain / left component.
  const SemType& first() const;
  // Codomain / right component.
  const SemType& second() const;

  bool is_ground() const;
  bool mentions(const std::string& var) const;
  void CollectVars(std::set<std::string>* out) const;

  // Surface syntax, e.g. "nat -> (nat -> Prop) -> Prop".
  std::string str() const;

  friend bool operator==(const SemType& a, const SemType& b);
  friend bool operator!=(const SemType& a, const SemType& b) { return !(a == b); }
  friend bool operator<(const SemType& a, const SemType& b);

 private:
  struct Node;
  explicit SemType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Term {
 public:
  enum class Kind : std::uint8_t {
    kVar, kConst, kLam, kApp, kForAll, kExists,
    kAnd, kOr, kImplies, kNot, kEq, kTruthLit,
    kPair, kFst, kSnd,
  };

  Term();  // TruthLit(true)

  static Term Var(std::string name, SemType type);
  static Term Const(std::string name, SemType type);
  static Term Lam(std::string binder, SemType binder_type, Term body);
  static Term App(Term fn, Term arg);
  static Term Apps(Term fn, const std::vector<Term>& args);
  static Term ForAll(std::string binder, SemType binder_type, Term body);
  static Term Exists(std::string binder, SemType binder_type, Term body);
  static Term And(Term l, Term r);
  static Term Or(Term l, Term r);
  static Term Implies(Term l, Term r);
  static Term Not(Term t);
  static Term Eq(SemType type, Term l, Term r);
  static Term Lit(bool value);
  static Term Pair(Term l, Term r);
  static Term Fst(Term p);
  static Term Snd(Term p);
  // Binder kind (kLam / kForAll / kExists) rebuilt with new parts.
  static Term Binder(Kind kind, std::string binder, SemType binder_type, Term body);
  static Term Binary(Kind kind, Term l, Term r);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  bool is_binder() const;
  bool is_binary() const;  // And, Or, Implies, Pair

  // Var / Const name, or binder name.
  const std::string& name() const;
  // Var / Const type, binder type, or the carried type of Eq.
  const SemType& type() const;
  // App: fn; binary nodes: left; Not/Fst/Snd: operand; binders: body.
  const Term& first() const;
  // App: arg; binary nodes: right.
  const Term& second() const;
  const Term& fn() const { return first(); }
  const Term& arg() const { return second(); }
  const Term& body() const { return first(); }
  const Term& lhs() const { return first(); }
  const Term& rhs() const { return second(); }
  const Term& operand() const { return first(); }
  bool value() const;

  std::size_t size() const;
  std::set<std::string> FreeVars() const;
  bool HasFreeVar(const std::string& name) const;
  bool MentionsConst(const std::string& name) const;
  bool HasTypeVars() const;

  // Structural identity (binder names significant).
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term Make(Kind kind, std::string name, SemType type, Term a, Term b, bool value, int arity);
  std::shared_ptr<const Node> node_;
};

struct TypeRendering {
  std::string lean;  // empty: axiomatized stub
  std::string coq;
};

class SignatureConflict : public std::runtime_error {
 public:
  explicit SignatureConflict(const std::string& name, const std::string& detail)
      : std::runtime_error("signature conflict for '" + name + "': " + detail), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Declared base types and typed constants.  Digit-only names resolve to the
// numeral type when one is configured.
class Signature {
 public:
  void AddType(const std::string& name, TypeRendering rendering = {});
  void AddConstant(const std::string& name, const SemType& type);
  void SetNumeralType(const std::string& base);
  // Union; throws SignatureConflict on incompatible constant types.
  void Merge(const Signature& other);

  bool HasType(const std::string& name) const;
  std::optional<SemType> ConstantType(const std::string& name) const;
  const std::optional<std::string>& numeral_type() const { return numeral_type_; }
  const std::map<std::string, TypeRendering>& types() const { return types_; }
  const std::map<std::string, SemType>& constants() const { return constants_; }

 private:
  std::map<std::string, TypeRendering> types_;
  std::map<std::string, SemType> constants_;
  std::optional<std::string> numeral_type_;
};

bool IsNumeral(const std::string& name);

class TypeError : public std::runtime_error {
 public:
  TypeError(std::string path, std::string expected, std::string found, std::string what);
  const std::string& path() const { return path_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string path_, expected_, found_;
};

// The unique type of t.  Throws TypeError naming the first failing subterm.
SemType TypeOf(const Term& t, const Signature& sig);

// ---------------------------------------------------------------------------
// Type substitutions and unification.

class TypeSubst {
 public:
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const SemType* Find(const std::string& var) const;
  // Binds var to type, keeping the substitution idempotent.  The caller is
  // responsible for the occurs check.
  void Bind(const std::string& var, const SemType& type);
  SemType Apply(const SemType& t) const;
  // this followed by later: result(t) == later.Apply(this->Apply(t)).
  TypeSubst Then(const TypeSubst& later) const;
  const std::map<std::string, SemType>& bindings() const { return map_; }

  friend bool operator==(const TypeSubst& a, const TypeSubst& b) { return a.map_ == b.map_; }

 private:
  std::map<std::string, SemType> map_;
};

struct UnifyError {
  enum class Kind { kClash, kOccursCheck, kCatClash };
  Kind kind = Kind::kClash;
  std::string lhs, rhs;
  std::string message() const;
};

// Extends *s to the most general unifier of a and b.  On failure *s is left
// untouched and *why (if given) describes the clash.
bool Unify(const SemType& a, const SemType& b, TypeSubst* s, UnifyError* why = nullptr);

SemType ApplySubst(const TypeSubst& s, const SemType& t);
Term ApplySubst(const TypeSubst& s, const Term& t);
Term MapTypes(const Term& t, const std::function<SemType(const SemType&)>& f);

// ---------------------------------------------------------------------------
// Normalization.

enum class Strategy { kInnermost, kLeftmostOutermost };

// Capture-avoiding t[name := value].
Term Substitute(const Term& t, const std::string& name, const Term& value);
std::string FreshName(const std::string& base, const std::set<std::string>& avoid);

// Beta normal form; also contracts fst/snd of explicit pairs.
Term BetaNormalize(const Term& t, Strategy strategy = Strategy::kInnermost);
Term EtaReduce(const Term& t);
// Removes trivially-true guards: (true -> P), (true /\ P), (P /\ true).
Term Simplify(const Term& t);
// BetaNormalize followed by Simplify (and EtaReduce when asked).
Term Normalize(const Term& t, bool eta = false);

bool AlphaEq(const Term& a, const Term& b);

}  // namespace catspec

#endif  // CATSPEC_SEM_HPP_
