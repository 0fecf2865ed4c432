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

#include "catspec/sem.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace catspec {

// ---------------------------------------------------------------------------
// SemType

struct SemType::Node {
  Kind kind;
  std::string name;
  SemType a, b;
  bool ground;
};

SemType::SemType() : SemType(Truth()) {}

SemType SemType::Truth() {
  static const SemType truth(std::make_shared<const Node>(Node{Kind::kTruth, "", SemType(nullptr), SemType(nullptr), true}));
  return truth;
}

SemType SemType::Base(std::string name) {
  return SemType(std::make_shared<const Node>(Node{Kind::kBase, std::move(name), SemType(nullptr), SemType(nullptr), true}));
}

SemType SemType::Arrow(SemType domain, SemType codomain) {
  bool ground = domain.is_ground() && codomain.is_ground();
  return SemType(std::make_shared<const Node>(
      Node{Kind::kArrow, "", std::move(domain), std::move(codomain), ground}));
}

SemType SemType::Prod(SemType left, SemType right) {
  bool ground = left.is_ground() && right.is_ground();
  return SemType(std::make_shared<const Node>(
      Node{Kind::kProd, "", std::move(left), std::move(right), ground}));
}

SemType SemType::Var(std::string id) {
  return SemType(std::make_shared<const Node>(Node{Kind::kVar, std::move(id), SemType(nullptr), SemType(nullptr), false}));
}

SemType SemType::Arrows(const std::vector<SemType>& args, SemType result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) result = Arrow(*it, result);
  return result;
}

SemType::Kind SemType::kind() const { return node_->kind; }
const std::string& SemType::name() const { return node_->name; }
const SemType& SemType::first() const { return node_->a; }
const SemType& SemType::second() const { return node_->b; }
bool SemType::is_ground() const { return node_->ground; }

bool SemType::mentions(const std::string& var) const {
  switch (kind()) {
    case Kind::kVar: return name() == var;
    case Kind::kArrow:
    case Kind::kProd: return first().mentions(var) || second().mentions(var);
    default: return false;
  }
}

void SemType::CollectVars(std::set<std::string>* out) const {
  switch (kind()) {
    case Kind::kVar: out->insert(name()); break;
    case Kind::kArrow:
    case Kind::kProd:
      first().CollectVars(out);
      second().CollectVars(out);
      break;
    default: break;
  }
}

namespace {

void PrintType(const SemType& t, int prec, std::string* out) {
  // prec 0: arrow position, 1: product operand, 2: atom
  switch (t.kind()) {
    case SemType::Kind::kTruth: *out += "Prop"; return;
    case SemType::Kind::kBase:
    case SemType::Kind::kVar: *out += t.name(); return;
    case SemType::Kind::kArrow:
      if (prec > 0) *out += '(';
      PrintType(t.first(), 1, out);
      *out += " -> ";
      PrintType(t.second(), 0, out);
      if (prec > 0) *out += ')';
      return;
    case SemType::Kind::kProd:
      if (prec > 1) *out += '(';
      PrintType(t.first(), 2, out);
      *out += " * ";
      PrintType(t.second(), 2, out);
      if (prec > 1) *out += ')';
      return;
  }
}

}  // namespace

std::string SemType::str() const {
  std::string out;
  PrintType(*this, 0, &out);
  return out;
}

bool operator==(const SemType& a, const SemType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SemType::Kind::kTruth: return true;
    case SemType::Kind::kBase:
    case SemType::Kind::kVar: return a.name() == b.name();
    default: return a.first() == b.first() && a.second() == b.second();
  }
}

bool operator<(const SemType& a, const SemType& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case SemType::Kind::kTruth: return false;
    case SemType::Kind::kBase:
    case SemType::Kind::kVar: return a.name() < b.name();
    default:
      if (a.first() != b.first()) return a.first() < b.first();
      return a.second() < b.second();
  }
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  std::string name;
  SemType type;
  Term a, b;
  bool value = true;
  std::size_t size = 1;
  bool has_tyvars = false;
};

Term::Term() : Term(Lit(true)) {}


Term Term::Var(std::string name, SemType type) {
  return Make(Kind::kVar, std::move(name), std::move(type), Term(nullptr), Term(nullptr), true, 0);
}

Term Term::Const(std::string name, SemType type) {
  return Make(Kind::kConst, std::move(name), std::move(type), Term(nullptr), Term(nullptr), true, 0);
}

Term Term::Lam(std::string binder, SemType binder_type, Term body) {
  return Binder(Kind::kLam, std::move(binder), std::move(binder_type), std::move(body));
}

Term Term::ForAll(std::string binder, SemType binder_type, Term body) {
  return Binder(Kind::kForAll, std::move(binder), std::move(binder_type), std::move(body));
}

Term Term::Exists(std::string binder, SemType binder_type, Term body) {
  return Binder(Kind::kExists, std::move(binder), std::move(binder_type), std::move(body));
}

Term Term::Binder(Kind kind, std::string binder, SemType binder_type, Term body) {
  return Make(kind, std::move(binder), std::move(binder_type), std::move(body), Term(nullptr), true, 1);
}

Term Term::App(Term fn, Term arg) {
  return Make(Kind::kApp, "", SemType::Truth(), std::move(fn), std::move(arg), true, 2);
}

Term Term::Apps(Term fn, const std::vector<Term>& args) {
  for (const Term& a : args) fn = App(std::move(fn), a);
  return fn;
}

Term Term::Binary(Kind kind, Term l, Term r) {
  return Make(kind, "", SemType::Truth(), std::move(l), std::move(r), true, 2);
}

Term Term::And(Term l, Term r) { return Binary(Kind::kAnd, std::move(l), std::move(r)); }
Term Term::Or(Term l, Term r) { return Binary(Kind::kOr, std::move(l), std::move(r)); }
Term Term::Implies(Term l, Term r) { return Binary(Kind::kImplies, std::move(l), std::move(r)); }
Term Term::Pair(Term l, Term r) { return Binary(Kind::kPair, std::move(l), std::move(r)); }

Term Term::Not(Term t) {
  return Make(Kind::kNot, "", SemType::Truth(), std::move(t), Term(nullptr), true, 1);
}

Term Term::Fst(Term p) {
  return Make(Kind::kFst, "", SemType::Truth(), std::move(p), Term(nullptr), true, 1);
}

Term Term::Snd(Term p) {
  return Make(Kind::kSnd, "", SemType::Truth(), std::move(p), Term(nullptr), true, 1);
}

Term Term::Eq(SemType type, Term l, Term r) {
  return Make(Kind::kEq, "", std::move(type), std::move(l), std::move(r), true, 2);
}

Term Term::Lit(bool value) {
  static const Term t = Make(Kind::kTruthLit, "", SemType::Truth(), Term(nullptr), Term(nullptr), true, 0);
  static const Term f = Make(Kind::kTruthLit, "", SemType::Truth(), Term(nullptr), Term(nullptr), false, 0);
  return value ? t : f;
}


Term Term::Make(Kind kind, std::string name, SemType type, Term a, Term b, bool value, int arity) {
  Node n{kind, std::move(name), std::move(type), std::move(a), std::move(b), value, 1, false};
  bool typed = kind == Term::Kind::kVar || kind == Term::Kind::kConst || kind == Term::Kind::kLam ||
               kind == Term::Kind::kForAll || kind == Term::Kind::kExists || kind == Term::Kind::kEq;
  n.has_tyvars = typed && !n.type.is_ground();
  if (arity >= 1) {
    n.size += n.a.size();
    n.has_tyvars = n.has_tyvars || n.a.HasTypeVars();
  }
  if (arity >= 2) {
    n.size += n.b.size();
    n.has_tyvars = n.has_tyvars || n.b.HasTypeVars();
  }
  return Term(std::make_shared<const Node>(std::move(n)));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const SemType& Term::type() const { return node_->type; }
const Term& Term::first() const { return node_->a; }
const Term& Term::second() const { return node_->b; }
bool Term::value() const { return node_->value; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }
bool Term::HasTypeVars() const { return node_ && node_->has_tyvars; }

bool Term::is_binder() const {
  Kind k = kind();
  return k == Kind::kLam || k == Kind::kForAll || k == Kind::kExists;
}

bool Term::is_binary() const {
  Kind k = kind();
  return k == Kind::kAnd || k == Kind::kOr || k == Kind::kImplies || k == Kind::kPair ||
         k == Kind::kEq || k == Kind::kApp;
}

namespace {

void CollectFree(const Term& t, std::vector<std::string>* bound, std::set<std::string>* out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (std::find(bound->begin(), bound->end(), t.name()) == bound->end()) out->insert(t.name());
      return;
    case Term::Kind::kConst:
    case Term::Kind::kTruthLit: return;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists:
      bound->push_back(t.name());
      CollectFree(t.body(), bound, out);
      bound->pop_back();
      return;
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: CollectFree(t.operand(), bound, out); return;
    default:
      CollectFree(t.first(), bound, out);
      CollectFree(t.second(), bound, out);
      return;
  }
}

bool FreeIn(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::kVar: return t.name() == name;
    case Term::Kind::kConst:
    case Term::Kind::kTruthLit: return false;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: return t.name() != name && FreeIn(t.body(), name);
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: return FreeIn(t.operand(), name);
    default: return FreeIn(t.first(), name) || FreeIn(t.second(), name);
  }
}

}  // namespace

std::set<std::string> Term::FreeVars() const {
  std::set<std::string> out;
  std::vector<std::string> bound;
  CollectFree(*this, &bound, &out);
  return out;
}

bool Term::HasFreeVar(const std::string& name) const { return FreeIn(*this, name); }

bool Term::MentionsConst(const std::string& name) const {
  switch (kind()) {
    case Kind::kConst: return this->name() == name;
    case Kind::kVar:
    case Kind::kTruthLit: return false;
    case Kind::kLam:
    case Kind::kForAll:
    case Kind::kExists:
    case Kind::kNot:
    case Kind::kFst:
    case Kind::kSnd: return first().MentionsConst(name);
    default: return first().MentionsConst(name) || second().MentionsConst(name);
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst: return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::kTruthLit: return a.value() == b.value();
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists:
      return a.name() == b.name() && a.type() == b.type() && a.body() == b.body();
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: return a.operand() == b.operand();
    case Term::Kind::kEq:
      return a.type() == b.type() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    default: return a.first() == b.first() && a.second() == b.second();
  }
}

// ---------------------------------------------------------------------------
// Signature

bool IsNumeral(const std::string& name) {
  return !name.empty() &&
         std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

void Signature::AddType(const std::string& name, TypeRendering rendering) {
  auto [it, inserted] = types_.emplace(name, rendering);
  if (!inserted && it->second.lean.empty() && it->second.coq.empty()) it->second = std::move(rendering);
}

void Signature::AddConstant(const std::string& name, const SemType& type) {
  auto [it, inserted] = constants_.emplace(name, type);
  if (!inserted && it->second != type) {
    throw SignatureConflict(name, "declared as " + it->second.str() + " and as " + type.str());
  }
}

void Signature::SetNumeralType(const std::string& base) {
  if (numeral_type_ && *numeral_type_ != base) {
    throw SignatureConflict("numerals", "typed as " + *numeral_type_ + " and as " + base);
  }
  numeral_type_ = base;
}

void Signature::Merge(const Signature& other) {
  for (const auto& [name, r] : other.types_) AddType(name, r);
  for (const auto& [name, t] : other.constants_) AddConstant(name, t);
  if (other.numeral_type_) SetNumeralType(*other.numeral_type_);
}

bool Signature::HasType(const std::string& name) const { return types_.count(name) != 0; }

std::optional<SemType> Signature::ConstantType(const std::string& name) const {
  auto it = constants_.find(name);
  if (it != constants_.end()) return it->second;
  if (numeral_type_ && IsNumeral(name)) return SemType::Base(*numeral_type_);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Type checking

TypeError::TypeError(std::string path, std::string expected, std::string found, std::string what)
    : std::runtime_error(std::move(what)),
      path_(std::move(path)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

struct TypeChecker {
  const Signature& sig;
  std::vector<std::pair<std::string, SemType>> env;
  std::vector<const char*> path;

  [[noreturn]] void Fail(const std::string& expected, const std::string& found, const std::string& what) {
    std::string p = "/";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) p += '/';
      p += path[i];
    }
    std::string msg = "ill-typed at " + p + ": " + what;
    if (!expected.empty()) msg += " (expected " + expected + ", found " + found + ")";
    throw TypeError(p, expected, found, msg);
  }

  SemType Sub(const char* step, const Term& t) {
    path.push_back(step);
    SemType r = Check(t);
    path.pop_back();
    return r;
  }

  void Expect(const char* step, const Term& t, const SemType& want) {
    SemType got = Sub(step, t);
    if (got != want) {
      path.push_back(step);
      Fail(want.str(), got.str(), "type mismatch");
    }
  }

  SemType Check(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::kVar: {
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
          if (it->first == t.name()) {
            if (it->second != t.type()) Fail(it->second.str(), t.type().str(), "variable " + t.name() + " annotated inconsistently");
            break;
          }
        }
        return t.type();
      }
      case Term::Kind::kConst: {
        auto declared = sig.ConstantType(t.name());
        if (!declared) Fail("", "", "unknown constant " + t.name());
        if (*declared != t.type()) Fail(declared->str(), t.type().str(), "constant " + t.name() + " used at the wrong type");
        return t.type();
      }
      case Term::Kind::kLam: {
        env.emplace_back(t.name(), t.type());
        SemType body = Sub("body", t.body());
        env.pop_back();
        return SemType::Arrow(t.type(), body);
      }
      case Term::Kind::kForAll:
      case Term::Kind::kExists: {
        env.emplace_back(t.name(), t.type());
        Expect("body", t.body(), SemType::Truth());
        env.pop_back();
        return SemType::Truth();
      }
      case Term::Kind::kApp: {
        SemType f = Sub("fn", t.fn());
        if (!f.is_arrow()) {
          path.push_back("fn");
          Fail("a function type", f.str(), "applying a non-function");
        }
        Expect("arg", t.arg(), f.first());
        return f.second();
      }
      case Term::Kind::kAnd:
      case Term::Kind::kOr:
      case Term::Kind::kImplies:
        Expect("lhs", t.lhs(), SemType::Truth());
        Expect("rhs", t.rhs(), SemType::Truth());
        return SemType::Truth();
      case Term::Kind::kNot:
        Expect("operand", t.operand(), SemType::Truth());
        return SemType::Truth();
      case Term::Kind::kEq:
        Expect("lhs", t.lhs(), t.type());
        Expect("rhs", t.rhs(), t.type());
        return SemType::Truth();
      case Term::Kind::kTruthLit: return SemType::Truth();
      case Term::Kind::kPair: return SemType::Prod(Sub("fst", t.lhs()), Sub("snd", t.rhs()));
      case Term::Kind::kFst:
      case Term::Kind::kSnd: {
        SemType p = Sub("operand", t.operand());
        if (!p.is_prod()) {
          path.push_back("operand");
          Fail("a product type", p.str(), "projection from a non-pair");
        }
        return t.is(Term::Kind::kFst) ? p.first() : p.second();
      }
    }
    Fail("", "", "unknown term kind");
  }
};

}  // namespace

SemType TypeOf(const Term& t, const Signature& sig) {
  TypeChecker checker{sig, {}, {}};
  return checker.Check(t);
}

// ---------------------------------------------------------------------------
// Substitution and unification

const SemType* TypeSubst::Find(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

namespace {

SemType ReplaceVar(const SemType& t, const std::string& var, const SemType& by) {
  if (!t.mentions(var)) return t;
  switch (t.kind()) {
    case SemType::Kind::kVar: return by;
    case SemType::Kind::kArrow: return SemType::Arrow(ReplaceVar(t.first(), var, by), ReplaceVar(t.second(), var, by));
    case SemType::Kind::kProd: return SemType::Prod(ReplaceVar(t.first(), var, by), ReplaceVar(t.second(), var, by));
    default: return t;
  }
}

}  // namespace

void TypeSubst::Bind(const std::string& var, const SemType& type) {
  SemType resolved = Apply(type);
  for (auto& [name, range] : map_) range = ReplaceVar(range, var, resolved);
  map_[var] = resolved;
}

SemType TypeSubst::Apply(const SemType& t) const {
  if (map_.empty() || t.is_ground()) return t;
  switch (t.kind()) {
    case SemType::Kind::kVar: {
      const SemType* bound = Find(t.name());
      return bound ? *bound : t;
    }
    case SemType::Kind::kArrow: return SemType::Arrow(Apply(t.first()), Apply(t.second()));
    case SemType::Kind::kProd: return SemType::Prod(Apply(t.first()), Apply(t.second()));
    default: return t;
  }
}

TypeSubst TypeSubst::Then(const TypeSubst& later) const {
  TypeSubst out;
  for (const auto& [name, range] : map_) out.map_[name] = later.Apply(range);
  for (const auto& [name, range] : later.map_) out.map_.emplace(name, range);
  return out;
}

std::string UnifyError::message() const {
  switch (kind) {
    case Kind::kOccursCheck: return "occurs check: " + lhs + " occurs in " + rhs;
    case Kind::kCatClash: return "category clash: " + lhs + " vs " + rhs;
    case Kind::kClash: break;
  }
  return "type clash: " + lhs + " vs " + rhs;
}

namespace {

bool UnifyInPlace(const SemType& a0, const SemType& b0, TypeSubst* s, UnifyError* why) {
  SemType a = s->Apply(a0);
  SemType b = s->Apply(b0);
  if (a == b) return true;
  if (b.is_var() && !a.is_var()) std::swap(a, b);
  if (a.is_var()) {
    if (b.mentions(a.name())) {
      if (why) *why = UnifyError{UnifyError::Kind::kOccursCheck, a.str(), b.str()};
      return false;
    }
    s->Bind(a.name(), b);
    return true;
  }
  if (a.kind() != b.kind() || a.kind() == SemType::Kind::kBase) {
    if (why) *why = UnifyError{UnifyError::Kind::kClash, a.str(), b.str()};
    return false;
  }
  if (a.kind() == SemType::Kind::kArrow || a.kind() == SemType::Kind::kProd) {
    return UnifyInPlace(a.first(), b.first(), s, why) && UnifyInPlace(a.second(), b.second(), s, why);
  }
  return true;
}

}  // namespace

bool Unify(const SemType& a, const SemType& b, TypeSubst* s, UnifyError* why) {
  TypeSubst work = *s;
  if (!UnifyInPlace(a, b, &work, why)) return false;
  *s = std::move(work);
  return true;
}

SemType ApplySubst(const TypeSubst& s, const SemType& t) { return s.Apply(t); }

Term MapTypes(const Term& t, const std::function<SemType(const SemType&)>& f) {
  switch (t.kind()) {
    case Term::Kind::kVar: return Term::Var(t.name(), f(t.type()));
    case Term::Kind::kConst: return Term::Const(t.name(), f(t.type()));
    case Term::Kind::kTruthLit: return t;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: return Term::Binder(t.kind(), t.name(), f(t.type()), MapTypes(t.body(), f));
    case Term::Kind::kNot: return Term::Not(MapTypes(t.operand(), f));
    case Term::Kind::kFst: return Term::Fst(MapTypes(t.operand(), f));
    case Term::Kind::kSnd: return Term::Snd(MapTypes(t.operand(), f));
    case Term::Kind::kEq: return Term::Eq(f(t.type()), MapTypes(t.lhs(), f), MapTypes(t.rhs(), f));
    case Term::Kind::kApp: return Term::App(MapTypes(t.fn(), f), MapTypes(t.arg(), f));
    default: return Term::Binary(t.kind(), MapTypes(t.first(), f), MapTypes(t.second(), f));
  }
}

Term ApplySubst(const TypeSubst& s, const Term& t) {
  if (s.empty() || !t.HasTypeVars()) return t;
  return MapTypes(t, [&s](const SemType& ty) { return s.Apply(ty); });
}

// ---------------------------------------------------------------------------
// Normalization

std::string FreshName(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "x";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

Term Substitute(const Term& t, const std::string& name, const Term& value) {
  switch (t.kind()) {
    case Term::Kind::kVar: return t.name() == name ? value : t;
    case Term::Kind::kConst:
    case Term::Kind::kTruthLit: return t;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: {
      if (t.name() == name || !t.body().HasFreeVar(name)) return t;
      if (value.HasFreeVar(t.name())) {
        std::set<std::string> avoid = value.FreeVars();
        std::set<std::string> body_free = t.body().FreeVars();
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(name);
        std::string fresh = FreshName(t.name(), avoid);
        Term renamed = Substitute(t.body(), t.name(), Term::Var(fresh, t.type()));
        return Term::Binder(t.kind(), fresh, t.type(), Substitute(renamed, name, value));
      }
      return Term::Binder(t.kind(), t.name(), t.type(), Substitute(t.body(), name, value));
    }
    case Term::Kind::kNot: return Term::Not(Substitute(t.operand(), name, value));
    case Term::Kind::kFst: return Term::Fst(Substitute(t.operand(), name, value));
    case Term::Kind::kSnd: return Term::Snd(Substitute(t.operand(), name, value));
    case Term::Kind::kEq: return Term::Eq(t.type(), Substitute(t.lhs(), name, value), Substitute(t.rhs(), name, value));
    case Term::Kind::kApp: return Term::App(Substitute(t.fn(), name, value), Substitute(t.arg(), name, value));
    default: return Term::Binary(t.kind(), Substitute(t.first(), name, value), Substitute(t.second(), name, value));
  }
}

namespace {

Term Rebuild(const Term& t, Term a, Term b = Term()) {
  switch (t.kind()) {
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: return Term::Binder(t.kind(), t.name(), t.type(), std::move(a));
    case Term::Kind::kNot: return Term::Not(std::move(a));
    case Term::Kind::kFst: return Term::Fst(std::move(a));
    case Term::Kind::kSnd: return Term::Snd(std::move(a));
    case Term::Kind::kEq: return Term::Eq(t.type(), std::move(a), std::move(b));
    case Term::Kind::kApp: return Term::App(std::move(a), std::move(b));
    default: return Term::Binary(t.kind(), std::move(a), std::move(b));
  }
}

bool IsUnary(const Term& t) {
  return t.is_binder() || t.is(Term::Kind::kNot) || t.is(Term::Kind::kFst) || t.is(Term::Kind::kSnd);
}

bool IsLeaf(const Term& t) {
  return t.is(Term::Kind::kVar) || t.is(Term::Kind::kConst) || t.is(Term::Kind::kTruthLit);
}

// Contracts a redex at the root, if there is one.
std::optional<Term> Contract(const Term& t) {
  if (t.is(Term::Kind::kApp) && t.fn().is(Term::Kind::kLam)) {
    return Substitute(t.fn().body(), t.fn().name(), t.arg());
  }
  if (t.is(Term::Kind::kFst) && t.operand().is(Term::Kind::kPair)) return t.operand().lhs();
  if (t.is(Term::Kind::kSnd) && t.operand().is(Term::Kind::kPair)) return t.operand().rhs();
  return std::nullopt;
}

Term NormalizeInnermost(const Term& t) {
  if (IsLeaf(t)) return t;
  Term result;
  if (IsUnary(t)) {
    Term a = NormalizeInnermost(t.first());
    result = a == t.first() ? t : Rebuild(t, a);
  } else {
    Term a = NormalizeInnermost(t.first());
    Term b = NormalizeInnermost(t.second());
    result = (a == t.first() && b == t.second()) ? t : Rebuild(t, a, b);
  }
  if (auto contracted = Contract(result)) return NormalizeInnermost(*contracted);
  return result;
}

// One leftmost-outermost step.
std::optional<Term> StepOutermost(const Term& t) {
  if (auto contracted = Contract(t)) return contracted;
  if (IsLeaf(t)) return std::nullopt;
  if (auto a = StepOutermost(t.first())) return IsUnary(t) ? Rebuild(t, *a) : Rebuild(t, *a, t.second());
  if (IsUnary(t)) return std::nullopt;
  if (auto b = StepOutermost(t.second())) return Rebuild(t, t.first(), *b);
  return std::nullopt;
}

}  // namespace

Term BetaNormalize(const Term& t, Strategy strategy) {
  if (strategy == Strategy::kInnermost) return NormalizeInnermost(t);
  Term current = t;
  while (auto next = StepOutermost(current)) current = *next;
  return current;
}

Term EtaReduce(const Term& t) {
  if (IsLeaf(t)) return t;
  Term r = IsUnary(t) ? Rebuild(t, EtaReduce(t.first())) : Rebuild(t, EtaReduce(t.first()), EtaReduce(t.second()));
  if (r.is(Term::Kind::kLam) && r.body().is(Term::Kind::kApp)) {
    const Term& app = r.body();
    if (app.arg().is(Term::Kind::kVar) && app.arg().name() == r.name() && !app.fn().HasFreeVar(r.name())) {
      return app.fn();
    }
  }
  return r;
}

namespace {

bool IsTrue(const Term& t) { return t.is(Term::Kind::kTruthLit) && t.value(); }

Term SimplifyOnce(const Term& t) {
  if (IsLeaf(t)) return t;
  Term r = IsUnary(t) ? Rebuild(t, SimplifyOnce(t.first()))
                      : Rebuild(t, SimplifyOnce(t.first()), SimplifyOnce(t.second()));
  if (r.is(Term::Kind::kImplies) && IsTrue(r.lhs())) return r.rhs();
  if (r.is(Term::Kind::kAnd) && IsTrue(r.lhs())) return r.rhs();
  if (r.is(Term::Kind::kAnd) && IsTrue(r.rhs())) return r.lhs();
  return r;
}

}  // namespace

Term Simplify(const Term& t) {
  Term current = SimplifyOnce(t);
  for (;;) {
    Term next = SimplifyOnce(current);
    if (next == current) return current;
    current = next;
  }
}

Term Normalize(const Term& t, bool eta) {
  Term n = Simplify(BetaNormalize(t));
  return eta ? EtaReduce(n) : n;
}

namespace {

using BinderStack = std::vector<std::string>;

int Lookup(const BinderStack& stack, const std::string& name) {
  for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
    if (stack[i] == name) return static_cast<int>(stack.size()) - 1 - i;
  }
  return -1;
}

bool AlphaEqIn(const Term& a, const Term& b, BinderStack* sa, BinderStack* sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kVar: {
      int ia = Lookup(*sa, a.name());
      int ib = Lookup(*sb, b.name());
      if (ia != ib) return false;
      if (ia < 0 && a.name() != b.name()) return false;
      return a.type() == b.type();
    }
    case Term::Kind::kConst: return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::kTruthLit: return a.value() == b.value();
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: {
      if (a.type() != b.type()) return false;
      sa->push_back(a.name());
      sb->push_back(b.name());
      bool eq = AlphaEqIn(a.body(), b.body(), sa, sb);
      sa->pop_back();
      sb->pop_back();
      return eq;
    }
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: return AlphaEqIn(a.operand(), b.operand(), sa, sb);
    case Term::Kind::kEq:
      if (a.type() != b.type()) return false;
      [[fallthrough]];
    default: return AlphaEqIn(a.first(), b.first(), sa, sb) && AlphaEqIn(a.second(), b.second(), sa, sb);
  }
}

}  // namespace

bool AlphaEq(const Term& a, const Term& b) {
  BinderStack sa, sb;
  return AlphaEqIn(a, b, &sa, &sb);
}

}  // namespace catspec
