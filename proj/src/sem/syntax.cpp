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

#include "catspec/syntax.hpp"

#include <cctype>
#include <optional>
#include <utility>

namespace catspec {

namespace {

enum class Tok { kIdent, kNumber, kSym, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool IsIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> Lex(std::string_view s) {
  static const char* const kSymbols[] = {"/\\", "\\/", "->", "=>", "\\", ".", ",", ":", "(", ")", "~", "=", "*"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (IsIdentStart(c)) {
      std::size_t j = i;
      while (j < s.size() && IsIdentChar(s[j])) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      std::string_view v(sym);
      if (s.substr(i, v.size()) == v) {
        out.push_back({Tok::kSym, std::string(v), i});
        i += v.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

const char* const kKeywords[] = {"fun", "forall", "exists", "fst", "snd", "true", "false", "True", "False", "Prop"};

}  // namespace

bool IsKeyword(std::string_view word) {
  for (const char* k : kKeywords) {
    if (word == k) return true;
  }
  return false;
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : toks_(Lex(text)) {}

  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool at_sym(std::string_view s) const { return peek().kind == Tok::kSym && peek().text == s; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::kIdent && peek().text == w; }
  bool accept(std::string_view s) {
    if (!at_sym(s)) return false;
    ++i_;
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) Fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(t.pos, msg + (t.kind == Tok::kEnd ? " at end of input" : " near '" + t.text + "'"));
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

SemType ParseTypeExpr(Cursor& c, const Signature* sig, const std::vector<std::string>& vars);

SemType ParseTypeAtom(Cursor& c, const Signature* sig, const std::vector<std::string>& vars) {
  if (c.accept("(")) {
    SemType t = ParseTypeExpr(c, sig, vars);
    c.expect(")");
    return t;
  }
  if (c.peek().kind != Tok::kIdent) c.Fail("expected a type");
  Token t = c.next();
  if (t.text == "Prop") return SemType::Truth();
  for (const auto& v : vars) {
    if (v == t.text) return SemType::Var(t.text);
  }
  if (sig && !sig->HasType(t.text)) throw SyntaxError(t.pos, "unknown type '" + t.text + "'");
  return SemType::Base(t.text);
}

SemType ParseTypeProd(Cursor& c, const Signature* sig, const std::vector<std::string>& vars) {
  SemType t = ParseTypeAtom(c, sig, vars);
  while (c.accept("*")) t = SemType::Prod(t, ParseTypeAtom(c, sig, vars));
  return t;
}

SemType ParseTypeExpr(Cursor& c, const Signature* sig, const std::vector<std::string>& vars) {
  SemType t = ParseTypeProd(c, sig, vars);
  if (c.accept("->")) return SemType::Arrow(t, ParseTypeExpr(c, sig, vars));
  return t;
}

// Untyped syntax tree produced by the term parser.
struct Raw {
  enum class K { kIdent, kNum, kBinder, kApp, kBinary, kNot, kLit, kFst, kSnd };
  K k;
  Term::Kind op = Term::Kind::kTruthLit;  // binder or binary connective
  std::string name;
  std::optional<SemType> ann;
  std::vector<Raw> kids;
  bool value = true;
  std::size_t pos = 0;
};

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, const std::vector<std::string>& vars)
      : c_(text), sig_(sig), vars_(vars) {}

  Raw ParseAll() {
    Raw r = ParseTerm();
    if (c_.peek().kind != Tok::kEnd) c_.Fail("unexpected trailing input");
    return r;
  }

 private:
  bool AtBinder() const {
    return c_.at_sym("\\") || c_.at_word("fun") || c_.at_word("forall") || c_.at_word("exists");
  }

  Raw ParseTerm() {
    if (AtBinder()) return ParseBinder();
    return ParseImp();
  }

  Raw ParseBinder() {
    Token head = c_.next();
    Term::Kind kind = head.text == "forall" ? Term::Kind::kForAll
                      : head.text == "exists" ? Term::Kind::kExists
                                              : Term::Kind::kLam;
    std::vector<std::pair<std::string, std::size_t>> names;
    while (c_.peek().kind == Tok::kIdent && !IsKeyword(c_.peek().text)) {
      Token t = c_.next();
      names.emplace_back(t.text, t.pos);
    }
    if (names.empty()) c_.Fail("expected a binder name");
    std::optional<SemType> ann;
    if (c_.accept(":")) ann = ParseTypeExpr(c_, &sig_, vars_);
    if (!c_.accept(".") && !c_.accept(",") && !c_.accept("=>")) c_.Fail("expected '.' after binder");
    Raw body = ParseTerm();
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      Raw b{Raw::K::kBinder, kind, it->first, ann, {std::move(body)}, true, it->second};
      body = std::move(b);
    }
    return body;
  }

  Raw Binary(Term::Kind op, Raw l, Raw r, std::size_t pos) {
    Raw out{Raw::K::kBinary, op, "", std::nullopt, {}, true, pos};
    out.kids.push_back(std::move(l));
    out.kids.push_back(std::move(r));
    return out;
  }

  // Binders may also close a chain of connectives: "P -> forall x. Q".
  Raw ParseRhs(Raw (TermParser::*level)()) {
    if (AtBinder()) return ParseBinder();
    return (this->*level)();
  }

  Raw ParseImp() {
    Raw l = ParseOr();
    std::size_t pos = c_.peek().pos;
    if (c_.accept("->")) return Binary(Term::Kind::kImplies, std::move(l), ParseRhs(&TermParser::ParseImp), pos);
    return l;
  }

  Raw ParseOr() {
    Raw l = ParseAnd();
    std::size_t pos = c_.peek().pos;
    if (c_.accept("\\/")) return Binary(Term::Kind::kOr, std::move(l), ParseRhs(&TermParser::ParseOr), pos);
    return l;
  }

  Raw ParseAnd() {
    Raw l = ParseNot();
    std::size_t pos = c_.peek().pos;
    if (c_.accept("/\\")) return Binary(Term::Kind::kAnd, std::move(l), ParseRhs(&TermParser::ParseAnd), pos);
    return l;
  }

  Raw ParseNot() {
    std::size_t pos = c_.peek().pos;
    if (c_.accept("~")) {
      Raw out{Raw::K::kNot, Term::Kind::kNot, "", std::nullopt, {}, true, pos};
      out.kids.push_back(ParseRhs(&TermParser::ParseNot));
      return out;
    }
    return ParseEq();
  }

  Raw ParseEq() {
    Raw l = ParseApp();
    std::size_t pos = c_.peek().pos;
    if (c_.accept("=")) return Binary(Term::Kind::kEq, std::move(l), ParseApp(), pos);
    return l;
  }

  bool AtAtom() const {
    const Token& t = c_.peek();
    if (t.kind == Tok::kNumber) return true;
    if (t.kind == Tok::kIdent) return t.text != "fun" && t.text != "forall" && t.text != "exists";
    return c_.at_sym("(");
  }

  Raw ParseApp() {
    Raw head;
    std::size_t pos = c_.peek().pos;
    if (c_.at_word("fst") || c_.at_word("snd")) {
      bool fst = c_.next().text == "fst";
      head = Raw{fst ? Raw::K::kFst : Raw::K::kSnd, Term::Kind::kTruthLit, "", std::nullopt, {}, true, pos};
      head.kids.push_back(ParseAtom());
    } else {
      head = ParseAtom();
    }
    while (AtAtom() && !c_.at_word("fst") && !c_.at_word("snd")) {
      Raw app{Raw::K::kApp, Term::Kind::kApp, "", std::nullopt, {}, true, c_.peek().pos};
      app.kids.push_back(std::move(head));
      app.kids.push_back(ParseAtom());
      head = std::move(app);
    }
    return head;
  }

  Raw ParseAtom() {
    const Token& t = c_.peek();
    std::size_t pos = t.pos;
    if (t.kind == Tok::kNumber) return Raw{Raw::K::kNum, Term::Kind::kConst, c_.next().text, std::nullopt, {}, true, pos};
    if (t.kind == Tok::kIdent) {
      if (t.text == "true" || t.text == "True" || t.text == "false" || t.text == "False") {
        bool v = t.text == "true" || t.text == "True";
        c_.next();
        return Raw{Raw::K::kLit, Term::Kind::kTruthLit, "", std::nullopt, {}, v, pos};
      }
      if (IsKeyword(t.text)) c_.Fail("unexpected keyword");
      return Raw{Raw::K::kIdent, Term::Kind::kVar, c_.next().text, std::nullopt, {}, true, pos};
    }
    if (c_.accept("(")) {
      Raw inner = ParseTerm();
      if (c_.accept(",")) {
        Raw pair = Binary(Term::Kind::kPair, std::move(inner), ParseTerm(), pos);
        c_.expect(")");
        return pair;
      }
      c_.expect(")");
      return inner;
    }
    c_.Fail("expected a term");
  }

  Cursor c_;
  const Signature& sig_;
  const std::vector<std::string>& vars_;
};

constexpr char kSkolem = '!';
constexpr char kMeta = '?';

SemType Skolemize(const SemType& t, const std::vector<std::string>& rigid) {
  switch (t.kind()) {
    case SemType::Kind::kVar:
      for (const auto& v : rigid) {
        if (v == t.name()) return SemType::Base(std::string(1, kSkolem) + v);
      }
      return t;
    case SemType::Kind::kArrow: return SemType::Arrow(Skolemize(t.first(), rigid), Skolemize(t.second(), rigid));
    case SemType::Kind::kProd: return SemType::Prod(Skolemize(t.first(), rigid), Skolemize(t.second(), rigid));
    default: return t;
  }
}

SemType Unskolemize(const SemType& t) {
  switch (t.kind()) {
    case SemType::Kind::kBase:
      if (!t.name().empty() && t.name()[0] == kSkolem) return SemType::Var(t.name().substr(1));
      return t;
    case SemType::Kind::kArrow: return SemType::Arrow(Unskolemize(t.first()), Unskolemize(t.second()));
    case SemType::Kind::kProd: return SemType::Prod(Unskolemize(t.first()), Unskolemize(t.second()));
    default: return t;
  }
}

bool HasMeta(const SemType& t) {
  std::set<std::string> vars;
  t.CollectVars(&vars);
  for (const auto& v : vars) {
    if (!v.empty() && v[0] == kMeta) return true;
  }
  return false;
}

class Elaborator {
 public:
  Elaborator(const Signature& sig, const std::vector<std::string>& rigid) : sig_(sig), rigid_(rigid) {}

  Term Run(const Raw& raw, const SemType* expected) {
    auto [term, type] = Infer(raw);
    if (expected) {
      SemType want = Skolemize(*expected, rigid_);
      if (!Unify(type, want, &subst_)) {
        throw ElabError("term has type " + Show(type) + " but " + Show(want) + " was expected", Show(want),
                        Show(type));
      }
    }
    Term solved = MapTypes(term, [this](const SemType& t) { return subst_.Apply(t); });
    CheckSolved(solved);
    return MapTypes(solved, Unskolemize);
  }

 private:
  std::string Show(const SemType& t) const { return Unskolemize(subst_.Apply(t)).str(); }

  SemType Fresh() { return SemType::Var(std::string(1, kMeta) + std::to_string(++next_)); }

  void Require(const SemType& found, const SemType& want, const Raw& at, const std::string& what) {
    if (!Unify(found, want, &subst_)) {
      throw ElabError(what + " at column " + std::to_string(at.pos + 1) + " has type " + Show(found) + " but " +
                          Show(want) + " was expected",
                      Show(want), Show(found));
    }
  }

  void CheckSolved(const Term& t) {
    if (t.is(Term::Kind::kTruthLit)) return;
    if (t.is(Term::Kind::kVar) || t.is(Term::Kind::kConst) || t.is_binder() || t.is(Term::Kind::kEq)) {
      if (HasMeta(t.type())) {
        std::string what = t.is_binder() ? "binder '" + t.name() + "'"
                           : t.is(Term::Kind::kEq) ? std::string("equation")
                                                   : "'" + t.name() + "'";
        throw ElabError("cannot infer the type of " + what + "; add an annotation");
      }
    }
    if (t.is(Term::Kind::kVar) || t.is(Term::Kind::kConst)) return;
    CheckSolved(t.first());
    if (!t.is_binder() && !t.is(Term::Kind::kNot) && !t.is(Term::Kind::kFst) && !t.is(Term::Kind::kSnd)) {
      CheckSolved(t.second());
    }
  }

  std::pair<Term, SemType> Infer(const Raw& r) {
    switch (r.k) {
      case Raw::K::kIdent: {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
          if (it->first == r.name) return {Term::Var(r.name, it->second), it->second};
        }
        if (auto ty = sig_.ConstantType(r.name)) return {Term::Const(r.name, *ty), *ty};
        throw ElabError("unknown identifier '" + r.name + "' at column " + std::to_string(r.pos + 1));
      }
      case Raw::K::kNum: {
        auto ty = sig_.ConstantType(r.name);
        if (!ty) throw ElabError("numeral " + r.name + " used but no numeral type is declared");
        return {Term::Const(r.name, *ty), *ty};
      }
      case Raw::K::kLit: return {Term::Lit(r.value), SemType::Truth()};
      case Raw::K::kBinder: {
        SemType bt = r.ann ? Skolemize(*r.ann, rigid_) : Fresh();
        env_.emplace_back(r.name, bt);
        auto [body, body_type] = Infer(r.kids[0]);
        env_.pop_back();
        if (r.op == Term::Kind::kLam) return {Term::Lam(r.name, bt, body), SemType::Arrow(bt, body_type)};
        Require(body_type, SemType::Truth(), r.kids[0], "quantifier body");
        return {Term::Binder(r.op, r.name, bt, body), SemType::Truth()};
      }
      case Raw::K::kApp: {
        auto [fn, fn_type] = Infer(r.kids[0]);
        auto [arg, arg_type] = Infer(r.kids[1]);
        SemType f = subst_.Apply(fn_type);
        SemType result = Fresh();
        if (f.is_arrow()) {
          Require(arg_type, f.first(), r.kids[1], "argument");
          result = f.second();
        } else {
          Require(fn_type, SemType::Arrow(arg_type, result), r.kids[0], "applied term");
        }
        return {Term::App(fn, arg), result};
      }
      case Raw::K::kBinary: {
        auto [l, lt] = Infer(r.kids[0]);
        auto [rr, rt] = Infer(r.kids[1]);
        if (r.op == Term::Kind::kPair) return {Term::Pair(l, rr), SemType::Prod(lt, rt)};
        if (r.op == Term::Kind::kEq) {
          Require(rt, lt, r.kids[1], "right side of '='");
          return {Term::Eq(lt, l, rr), SemType::Truth()};
        }
        Require(lt, SemType::Truth(), r.kids[0], "operand");
        Require(rt, SemType::Truth(), r.kids[1], "operand");
        return {Term::Binary(r.op, l, rr), SemType::Truth()};
      }
      case Raw::K::kNot: {
        auto [t, tt] = Infer(r.kids[0]);
        Require(tt, SemType::Truth(), r.kids[0], "negated term");
        return {Term::Not(t), SemType::Truth()};
      }
      case Raw::K::kFst:
      case Raw::K::kSnd: {
        auto [p, pt] = Infer(r.kids[0]);
        SemType a = Fresh(), b = Fresh();
        Require(pt, SemType::Prod(a, b), r.kids[0], "projected term");
        bool fst = r.k == Raw::K::kFst;
        return {fst ? Term::Fst(p) : Term::Snd(p), fst ? a : b};
      }
    }
    throw ElabError("unreachable");
  }

  const Signature& sig_;
  const std::vector<std::string>& rigid_;
  TypeSubst subst_;
  std::vector<std::pair<std::string, SemType>> env_;
  int next_ = 0;
};

}  // namespace

SemType ParseType(std::string_view text, const Signature* sig, const std::vector<std::string>& ty_vars) {
  Cursor c(text);
  SemType t = ParseTypeExpr(c, sig, ty_vars);
  if (c.peek().kind != Tok::kEnd) c.Fail("unexpected trailing input");
  return t;
}

Term ParseTerm(std::string_view text, const Signature& sig, const std::vector<std::string>& ty_vars,
               const SemType* expected) {
  TermParser parser(text, sig, ty_vars);
  Raw raw = parser.ParseAll();
  Elaborator elab(sig, ty_vars);
  return elab.Run(raw, expected);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void CollectConsts(const Term& t, std::set<std::string>* out) {
  switch (t.kind()) {
    case Term::Kind::kConst: out->insert(t.name()); return;
    case Term::Kind::kVar:
    case Term::Kind::kTruthLit: return;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists:
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: CollectConsts(t.first(), out); return;
    default:
      CollectConsts(t.first(), out);
      CollectConsts(t.second(), out);
  }
}

bool ValidIdent(const std::string& s) {
  if (s.empty() || !IsIdentStart(s[0]) || IsKeyword(s)) return false;
  for (char c : s) {
    if (!IsIdentChar(c)) return false;
  }
  return true;
}

// Renames t's binder when its name would not read back as the same variable.
Term ClarifyBinder(const Term& t) {
  std::set<std::string> consts;
  CollectConsts(t.body(), &consts);
  if (ValidIdent(t.name()) && !consts.count(t.name())) return t;
  std::set<std::string> avoid = t.body().FreeVars();
  avoid.insert(consts.begin(), consts.end());
  std::string base = ValidIdent(t.name()) ? t.name() : "x";
  std::string fresh = FreshName(base, avoid);
  while (!ValidIdent(fresh)) fresh = FreshName(fresh + "_", avoid);
  return Term::Binder(t.kind(), fresh, t.type(), Substitute(t.body(), t.name(), Term::Var(fresh, t.type())));
}

void Print(const Term& t, int prec, std::string* out);

void PrintBinder(const Term& t0, int prec, std::string* out) {
  if (prec > 0) *out += '(';
  Term t = ClarifyBinder(t0);
  *out += t.is(Term::Kind::kLam) ? "\\" : t.is(Term::Kind::kForAll) ? "forall " : "exists ";
  *out += t.name();
  Term body = t.body();
  while (body.kind() == t.kind() && body.type() == t.type()) {
    body = ClarifyBinder(body);
    *out += ' ';
    *out += body.name();
    body = body.body();
  }
  *out += ':';
  *out += t.type().str();
  *out += ". ";
  Print(body, 0, out);
  if (prec > 0) *out += ')';
}

void PrintInfix(const Term& t, int prec, int mine, int lp, int rp, const char* op, std::string* out) {
  if (prec > mine) *out += '(';
  Print(t.first(), lp, out);
  *out += op;
  Print(t.second(), rp, out);
  if (prec > mine) *out += ')';
}

void Print(const Term& t, int prec, std::string* out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst: *out += t.name(); return;
    case Term::Kind::kTruthLit: *out += t.value() ? "true" : "false"; return;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: PrintBinder(t, prec, out); return;
    case Term::Kind::kImplies: PrintInfix(t, prec, 1, 2, 1, " -> ", out); return;
    case Term::Kind::kOr: PrintInfix(t, prec, 2, 3, 2, " \\/ ", out); return;
    case Term::Kind::kAnd: PrintInfix(t, prec, 3, 4, 3, " /\\ ", out); return;
    case Term::Kind::kEq: PrintInfix(t, prec, 5, 6, 6, " = ", out); return;
    case Term::Kind::kNot:
      if (prec > 4) *out += '(';
      *out += "~ ";
      Print(t.operand(), 4, out);
      if (prec > 4) *out += ')';
      return;
    case Term::Kind::kApp: PrintInfix(t, prec, 6, 6, 7, " ", out); return;
    case Term::Kind::kFst:
    case Term::Kind::kSnd:
      if (prec > 6) *out += '(';
      *out += t.is(Term::Kind::kFst) ? "fst " : "snd ";
      Print(t.operand(), 7, out);
      if (prec > 6) *out += ')';
      return;
    case Term::Kind::kPair:
      *out += '(';
      Print(t.lhs(), 0, out);
      *out += ", ";
      Print(t.rhs(), 0, out);
      *out += ')';
      return;
  }
}

}  // namespace

std::string PrintTerm(const Term& t) {
  std::string out;
  Print(t, 0, &out);
  return out;
}

}  // namespace catspec
