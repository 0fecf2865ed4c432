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

#include "catspec/grammar.hpp"

#include <cctype>

#include "catspec/syntax.hpp"

namespace catspec {

struct Cat::Node {
  Kind kind;
  SemType index;
  std::string prep;
  Cat a, b;  // slash: a = result, b = arg
  bool ground;
};

Cat::Cat() : Cat(S()) {}

Cat Cat::S() {
  static const Cat s(std::make_shared<const Node>(Node{Kind::kS, SemType::Truth(), "", Cat(nullptr), Cat(nullptr), true}));
  return s;
}

Cat Cat::Indexed(Kind kind, SemType index, std::string prep) {
  bool ground = index.is_ground();
  return Cat(std::make_shared<const Node>(Node{kind, std::move(index), std::move(prep), Cat(nullptr), Cat(nullptr), ground}));
}

Cat Cat::NP(SemType index) { return Indexed(Kind::kNP, std::move(index)); }
Cat Cat::Adj(SemType index) { return Indexed(Kind::kADJ, std::move(index)); }
Cat Cat::CN(SemType index) { return Indexed(Kind::kCN, std::move(index)); }
Cat Cat::PP(std::string prep, SemType index) { return Indexed(Kind::kPP, std::move(index), std::move(prep)); }

Cat Cat::RSlash(Cat result, Cat arg) {
  bool ground = result.is_ground() && arg.is_ground();
  return Cat(std::make_shared<const Node>(Node{Kind::kRSlash, SemType::Truth(), "", std::move(result), std::move(arg), ground}));
}

Cat Cat::LSlash(Cat arg, Cat result) {
  bool ground = result.is_ground() && arg.is_ground();
  return Cat(std::make_shared<const Node>(Node{Kind::kLSlash, SemType::Truth(), "", std::move(result), std::move(arg), ground}));
}

Cat::Kind Cat::kind() const { return node_->kind; }
const SemType& Cat::index() const { return node_->index; }
const std::string& Cat::prep() const { return node_->prep; }
const Cat& Cat::result() const { return node_->a; }
const Cat& Cat::arg() const { return node_->b; }
bool Cat::is_ground() const { return node_->ground; }

void Cat::CollectVars(std::set<std::string>* out) const {
  if (is_slash()) {
    result().CollectVars(out);
    arg().CollectVars(out);
  } else if (!is(Kind::kS)) {
    index().CollectVars(out);
  }
}

namespace {

void PrintCat(const Cat& c, bool nested, std::string* out) {
  switch (c.kind()) {
    case Cat::Kind::kS: *out += "S"; return;
    case Cat::Kind::kNP: *out += "NP<" + c.index().str() + ">"; return;
    case Cat::Kind::kADJ: *out += "ADJ<" + c.index().str() + ">"; return;
    case Cat::Kind::kCN: *out += "CN<" + c.index().str() + ">"; return;
    case Cat::Kind::kPP: *out += "PP[" + c.prep() + "]<" + c.index().str() + ">"; return;
    case Cat::Kind::kRSlash:
    case Cat::Kind::kLSlash: {
      if (nested) *out += '(';
      bool right = c.is(Cat::Kind::kRSlash);
      PrintCat(right ? c.result() : c.arg(), true, out);
      *out += right ? '/' : '\\';
      PrintCat(right ? c.arg() : c.result(), true, out);
      if (nested) *out += ')';
      return;
    }
  }
}

}  // namespace

std::string Cat::str() const {
  std::string out;
  PrintCat(*this, false, &out);
  return out;
}

bool operator==(const Cat& a, const Cat& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_slash()) return a.result() == b.result() && a.arg() == b.arg();
  return a.index() == b.index() && a.prep() == b.prep();
}

bool operator<(const Cat& a, const Cat& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.is_slash()) {
    if (a.result() != b.result()) return a.result() < b.result();
    return a.arg() < b.arg();
  }
  if (a.prep() != b.prep()) return a.prep() < b.prep();
  return a.index() < b.index();
}

SemType Interp(const Cat& c) {
  switch (c.kind()) {
    case Cat::Kind::kS: return SemType::Truth();
    case Cat::Kind::kNP:
    case Cat::Kind::kPP: return c.index();
    case Cat::Kind::kADJ:
    case Cat::Kind::kCN: return SemType::Arrow(c.index(), SemType::Truth());
    case Cat::Kind::kRSlash:
    case Cat::Kind::kLSlash: return SemType::Arrow(Interp(c.arg()), Interp(c.result()));
  }
  return SemType::Truth();
}

SemType LiftSpec::lifted() const { return SemType::Arrows(arg_types, SemType::Truth()); }

std::optional<LiftSpec> PropLike(const Cat& c) {
  switch (c.kind()) {
    case Cat::Kind::kS: return LiftSpec{};
    case Cat::Kind::kADJ:
    case Cat::Kind::kCN: return LiftSpec{1, {c.index()}};
    case Cat::Kind::kRSlash:
    case Cat::Kind::kLSlash: {
      auto inner = PropLike(c.result());
      if (!inner) return std::nullopt;
      LiftSpec out{inner->depth + 1, {Interp(c.arg())}};
      out.arg_types.insert(out.arg_types.end(), inner->arg_types.begin(), inner->arg_types.end());
      return out;
    }
    default: return std::nullopt;
  }
}

Term LiftOp(Term::Kind op, const LiftSpec& spec) {
  SemType lifted = spec.lifted();
  Term p = Term::Var("P", lifted);
  Term q = Term::Var("Q", lifted);
  std::vector<Term> xs;
  for (int i = 0; i < spec.depth; ++i) xs.push_back(Term::Var("x" + std::to_string(i + 1), spec.arg_types[i]));
  Term body = Term::Binary(op, Term::Apps(p, xs), Term::Apps(q, xs));
  for (int i = spec.depth - 1; i >= 0; --i) body = Term::Lam(xs[i].name(), xs[i].type(), body);
  return Term::Lam("P", lifted, Term::Lam("Q", lifted, body));
}

namespace {

bool UnifyCatsIn(const Cat& a, const Cat& b, TypeSubst* s, UnifyError* why) {
  if (a.kind() != b.kind() || a.prep() != b.prep()) {
    if (why) *why = UnifyError{UnifyError::Kind::kCatClash, ApplySubst(*s, a).str(), ApplySubst(*s, b).str()};
    return false;
  }
  if (a.is(Cat::Kind::kS)) return true;
  if (a.is_slash()) return UnifyCatsIn(a.result(), b.result(), s, why) && UnifyCatsIn(a.arg(), b.arg(), s, why);
  return Unify(a.index(), b.index(), s, why);
}

}  // namespace

bool UnifyCats(const Cat& a, const Cat& b, TypeSubst* s, UnifyError* why) {
  TypeSubst work = *s;
  if (!UnifyCatsIn(a, b, &work, why)) return false;
  *s = std::move(work);
  return true;
}

Cat MapIndices(const Cat& c, const std::function<SemType(const SemType&)>& f) {
  switch (c.kind()) {
    case Cat::Kind::kS: return c;
    case Cat::Kind::kRSlash: return Cat::RSlash(MapIndices(c.result(), f), MapIndices(c.arg(), f));
    case Cat::Kind::kLSlash: return Cat::LSlash(MapIndices(c.arg(), f), MapIndices(c.result(), f));
    default: return Cat::Indexed(c.kind(), f(c.index()), c.prep());
  }
}

Cat ApplySubst(const TypeSubst& s, const Cat& c) {
  if (s.empty() || c.is_ground()) return c;
  return MapIndices(c, [&s](const SemType& t) { return s.Apply(t); });
}

const MacroTable& BuiltinMacros() {
  static const MacroTable table = [] {
    SemType a = SemType::Var("A");
    Cat quant = Cat::RSlash(Cat::RSlash(Cat::S(), Cat::LSlash(Cat::NP(a), Cat::S())), Cat::CN(a));
    return MacroTable{{"Quant", CatMacro{{"A"}, quant}}};
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Category parser

namespace {

class CatParser {
 public:
  CatParser(std::string_view text, const Signature* sig, const std::vector<std::string>& vars,
            const MacroTable* macros)
      : s_(text), sig_(sig), vars_(vars), macros_(macros) {}

  Cat ParseAll() {
    Cat c = ParseCat();
    Skip();
    if (i_ != s_.size()) Fail("unexpected trailing input");
    return c;
  }

 private:
  [[noreturn]] void Fail(const std::string& msg) const { throw SyntaxError(i_, msg); }

  void Skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool Accept(char c) {
    Skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  char Peek() {
    Skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Cat ParseCat() {
    Cat first = ParseAtom();
    char op = Peek();
    if (op == '/') {
      Cat acc = first;
      while (Accept('/')) acc = Cat::RSlash(acc, ParseAtom());
      if (Peek() == '\\') Fail("mixed '/' and '\\' need parentheses");
      return acc;
    }
    if (op == '\\') {
      std::vector<Cat> chain{first};
      while (Accept('\\')) chain.push_back(ParseAtom());
      if (Peek() == '/') Fail("mixed '/' and '\\' need parentheses");
      Cat acc = chain.back();
      for (std::size_t k = chain.size() - 1; k-- > 0;) acc = Cat::LSlash(chain[k], acc);
      return acc;
    }
    return first;
  }

  std::string Word() {
    Skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_) Fail("expected a category");
    std::string w(s_.substr(i_, j - i_));
    i_ = j;
    return w;
  }

  // Reads "<t1, t2, ...>" where each ti is a semantic type.
  std::vector<SemType> Indices() {
    if (!Accept('<')) Fail("expected '<'");
    std::vector<SemType> out;
    std::size_t start = i_;
    for (;;) {
      if (i_ >= s_.size()) Fail("unterminated '<'");
      char c = s_[i_];
      if ((c == '>' && (i_ == 0 || s_[i_ - 1] != '-')) || c == ',') {
        std::string_view piece = s_.substr(start, i_ - start);
        try {
          out.push_back(ParseType(piece, sig_, vars_));
        } catch (const SyntaxError& e) {
          throw SyntaxError(start + e.offset(), std::string("in category index: ") + e.what());
        }
        ++i_;
        if (c == '>') return out;
        start = i_;
      } else {
        ++i_;
      }
    }
  }

  Cat ParseAtom() {
    if (Accept('(')) {
      Cat c = ParseCat();
      if (!Accept(')')) Fail("expected ')'");
      return c;
    }
    std::size_t at = i_;
    std::string w = Word();
    if (w == "S") return Cat::S();
    if (w == "PP") {
      if (!Accept('[')) Fail("expected '[' after PP");
      std::string prep = Word();
      if (!Accept(']')) Fail("expected ']'");
      return Cat::PP(prep, One(Indices(), at));
    }
    if (w == "NP") return Cat::NP(One(Indices(), at));
    if (w == "ADJ") return Cat::Adj(One(Indices(), at));
    if (w == "CN") return Cat::CN(One(Indices(), at));
    const CatMacro* macro = nullptr;
    if (macros_) {
      auto it = macros_->find(w);
      if (it != macros_->end()) macro = &it->second;
    }
    if (!macro) {
      auto it = BuiltinMacros().find(w);
      if (it != BuiltinMacros().end()) macro = &it->second;
    }
    if (!macro) throw SyntaxError(at, "unknown category '" + w + "'");
    std::vector<SemType> args = Peek() == '<' ? Indices() : std::vector<SemType>{};
    if (args.size() != macro->params.size()) {
      throw SyntaxError(at, "macro " + w + " expects " + std::to_string(macro->params.size()) + " index argument(s)");
    }
    // Simultaneous replacement of parameters by arguments.
    std::map<std::string, SemType> binding;
    for (std::size_t k = 0; k < args.size(); ++k) binding.emplace(macro->params[k], args[k]);
    std::function<SemType(const SemType&)> replace = [&](const SemType& t) -> SemType {
      switch (t.kind()) {
        case SemType::Kind::kVar: {
          auto it = binding.find(t.name());
          return it == binding.end() ? t : it->second;
        }
        case SemType::Kind::kArrow: return SemType::Arrow(replace(t.first()), replace(t.second()));
        case SemType::Kind::kProd: return SemType::Prod(replace(t.first()), replace(t.second()));
        default: return t;
      }
    };
    return MapIndices(macro->body, replace);
  }

  SemType One(const std::vector<SemType>& v, std::size_t at) const {
    if (v.size() != 1) throw SyntaxError(at, "expected exactly one index");
    return v[0];
  }

  std::string_view s_;
  std::size_t i_ = 0;
  const Signature* sig_;
  const std::vector<std::string>& vars_;
  const MacroTable* macros_;
};

}  // namespace

Cat ParseCat(std::string_view text, const Signature* sig, const std::vector<std::string>& ty_vars,
             const MacroTable* macros) {
  return CatParser(text, sig, ty_vars, macros).ParseAll();
}

}  // namespace catspec
