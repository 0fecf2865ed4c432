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

#include "catspec/backends.hpp"

#include <set>
#include <vector>

#include "catspec/syntax.hpp"

namespace catspec {

namespace {

struct Style {
  const char* forall;
  const char* exists;
  const char* arrow;
  const char* conj;
  const char* disj;
  const char* neg;
  const char* fst;
  const char* snd;
  const char* prod;
  std::set<std::string> reserved;
};

const Style& StyleFor(EmitTarget target, bool unicode) {
  static const Style kLean = {
      "forall", "exists", " -> ", " /\\ ", " \\/ ", "¬", "Prod.fst", "Prod.snd", " × ",
      {"at", "axiom", "by", "calc", "class", "def", "do", "else", "end", "exists", "forall", "from", "fun", "have",
       "if", "import", "in", "instance", "let", "match", "mutual", "namespace", "nomatch", "open", "partial",
       "private", "Prop", "protected", "section", "show", "Sort", "structure", "suffices", "then", "theorem", "Type",
       "universe", "unsafe", "variable", "where", "with", "True", "False", "Not", "Prod"}};
  static const Style kLeanUnicode = [] {
    Style s = kLean;
    s.forall = "∀";
    s.exists = "∃";
    s.arrow = " → ";
    s.conj = " ∧ ";
    s.disj = " ∨ ";
    return s;
  }();
  static const Style kCoq = {
      "forall", "exists", " -> ", " /\\ ", " \\/ ", "~", "fst", "snd", " * ",
      {"as", "at", "cofix", "else", "end", "exists", "exists2", "fix", "for", "forall", "fun", "if", "IF", "in", "let",
       "match", "mod", "Prop", "return", "Set", "SProp", "then", "Type", "using", "where", "with", "True", "False",
       "fst", "snd", "Parameter", "Theorem", "Admitted"}};
  if (target == EmitTarget::kCoq) return kCoq;
  return unicode ? kLeanUnicode : kLean;
}

const std::string& Rendering(const TypeRendering& r, EmitTarget target) {
  return target == EmitTarget::kCoq ? r.coq : r.lean;
}

void TypeText(const SemType& t, int prec, EmitTarget target, const Style& st, const Signature& sig,
              std::string* out) {
  switch (t.kind()) {
    case SemType::Kind::kTruth: *out += "Prop"; return;
    case SemType::Kind::kVar: throw UnprintableType("type variable " + t.name() + " cannot be printed");
    case SemType::Kind::kBase: {
      auto it = sig.types().find(t.name());
      const std::string* text = it == sig.types().end() ? nullptr : &Rendering(it->second, target);
      if (text && !text->empty()) {
        bool compound = text->find(' ') != std::string::npos;
        if (compound && prec > 2) *out += '(';
        *out += *text;
        if (compound && prec > 2) *out += ')';
      } else {
        *out += t.name();
      }
      return;
    }
    case SemType::Kind::kArrow:
      if (prec > 0) *out += '(';
      TypeText(t.first(), 1, target, st, sig, out);
      *out += st.arrow;
      TypeText(t.second(), 0, target, st, sig, out);
      if (prec > 0) *out += ')';
      return;
    case SemType::Kind::kProd:
      // Both tools read the product as right-associative.
      if (prec > 1) *out += '(';
      TypeText(t.first(), 2, target, st, sig, out);
      *out += st.prod;
      TypeText(t.second(), 1, target, st, sig, out);
      if (prec > 1) *out += ')';
      return;
  }
}

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

class Printer {
 public:
  Printer(EmitTarget target, const Signature& sig, const EmitOptions& opts)
      : target_(target), sig_(sig), opts_(opts), st_(StyleFor(target, opts.unicode)) {
    for (const auto& [name, r] : sig.types()) {
      taken_.insert(name);
      const std::string& text = Rendering(r, target);
      if (!text.empty()) taken_.insert(text.substr(0, text.find(' ')));
    }
  }

  void Print(const Term& t, int prec) {
    switch (t.kind()) {
      case Term::Kind::kVar:
      case Term::Kind::kConst: out_ += t.name(); return;
      case Term::Kind::kTruthLit: out_ += t.value() ? "True" : "False"; return;
      case Term::Kind::kLam:
      case Term::Kind::kForAll:
      case Term::Kind::kExists: Binder(t, prec); return;
      case Term::Kind::kImplies: Infix(t, prec, 1, 2, 1, st_.arrow); return;
      case Term::Kind::kOr: Infix(t, prec, 2, 3, 2, st_.disj); return;
      case Term::Kind::kAnd: Infix(t, prec, 3, 4, 3, st_.conj); return;
      case Term::Kind::kEq: Infix(t, prec, 5, 6, 6, " = "); return;
      case Term::Kind::kNot:
        if (prec > 4) out_ += '(';
        out_ += st_.neg;
        out_ += ' ';
        Print(t.operand(), 4);
        if (prec > 4) out_ += ')';
        return;
      case Term::Kind::kApp: Infix(t, prec, 6, 6, 7, " "); return;
      case Term::Kind::kFst:
      case Term::Kind::kSnd:
        if (prec > 6) out_ += '(';
        out_ += t.is(Term::Kind::kFst) ? st_.fst : st_.snd;
        out_ += ' ';
        Print(t.operand(), 7);
        if (prec > 6) out_ += ')';
        return;
      case Term::Kind::kPair:
        out_ += '(';
        Print(t.lhs(), 0);
        out_ += ", ";
        Print(t.rhs(), 0);
        out_ += ')';
        return;
    }
  }

  std::string Take() { return std::move(out_); }

 private:
  bool Usable(const std::string& name, const std::set<std::string>& consts) const {
    return !name.empty() && !st_.reserved.count(name) && !taken_.count(name) && !consts.count(name);
  }

  Term Clarify(const Term& t) const {
    std::set<std::string> consts;
    CollectConsts(t.body(), &consts);
    if (Usable(t.name(), consts)) return t;
    std::set<std::string> avoid = t.body().FreeVars();
    avoid.insert(consts.begin(), consts.end());
    avoid.insert(taken_.begin(), taken_.end());
    avoid.insert(st_.reserved.begin(), st_.reserved.end());
    std::string fresh = FreshName(t.name(), avoid);
    return Term::Binder(t.kind(), fresh, t.type(), Substitute(t.body(), t.name(), Term::Var(fresh, t.type())));
  }

  void Binder(const Term& t0, int prec) {
    if (prec > 0) out_ += '(';
    std::vector<std::pair<std::string, SemType>> run;
    Term t = t0;
    while (true) {
      t = Clarify(t);
      run.emplace_back(t.name(), t.type());
      if (t.body().kind() != t0.kind()) break;
      t = t.body();
    }
    Term body = t.body();
    if (t0.is(Term::Kind::kLam)) {
      out_ += "fun";
    } else {
      out_ += t0.is(Term::Kind::kForAll) ? st_.forall : st_.exists;
    }
    if (!opts_.typed_binders) {
      for (const auto& [name, ty] : run) {
        if (!ty.is_ground()) throw UnprintableType("binder " + name + " has type " + ty.str());
        out_ += ' ';
        out_ += name;
      }
    } else {
      for (std::size_t i = 0; i < run.size();) {
        std::size_t j = i;
        out_ += " (";
        for (; j < run.size() && run[j].second == run[i].second; ++j) {
          if (j > i) out_ += ' ';
          out_ += run[j].first;
        }
        out_ += " : ";
        TypeText(run[i].second, 0, target_, st_, sig_, &out_);
        out_ += ')';
        i = j;
      }
    }
    out_ += t0.is(Term::Kind::kLam) ? " => " : ", ";
    Print(body, 0);
    if (prec > 0) out_ += ')';
  }

  void Infix(const Term& t, int prec, int mine, int lp, int rp, const char* op) {
    if (prec > mine) out_ += '(';
    Print(t.first(), lp);
    out_ += op;
    Print(t.second(), rp);
    if (prec > mine) out_ += ')';
  }

  EmitTarget target_;
  const Signature& sig_;
  EmitOptions opts_;
  const Style& st_;
  std::set<std::string> taken_;
  std::string out_;
};

void CheckGround(const Term& t) {
  if (t.HasTypeVars()) throw UnprintableType("term mentions a type variable: " + PrintTerm(t));
}

void CollectBaseTypes(const SemType& t, std::set<std::string>* out) {
  if (t.kind() == SemType::Kind::kBase) {
    out->insert(t.name());
  } else if (t.is_arrow() || t.is_prod()) {
    CollectBaseTypes(t.first(), out);
    CollectBaseTypes(t.second(), out);
  }
}

}  // namespace

const char* EmitTargetName(EmitTarget t) {
  switch (t) {
    case EmitTarget::kLean4: return "lean";
    case EmitTarget::kCoq: return "coq";
    case EmitTarget::kPlain: return "plain";
  }
  return "?";
}

EmitTarget EmitTargetFromName(const std::string& name) {
  if (name == "lean" || name == "lean4") return EmitTarget::kLean4;
  if (name == "coq") return EmitTarget::kCoq;
  if (name == "plain") return EmitTarget::kPlain;
  throw std::invalid_argument("unknown emit target '" + name + "' (expected lean, coq or plain)");
}

std::string EmitType(const SemType& t, EmitTarget target, const Signature& sig) {
  if (target == EmitTarget::kPlain) {
    if (!t.is_ground()) throw UnprintableType("type variable in " + t.str());
    return t.str();
  }
  std::string out;
  TypeText(t, 0, target, StyleFor(target, false), sig, &out);
  return out;
}

std::string EmitTerm(const Term& t, EmitTarget target, const Signature& sig, const EmitOptions& opts) {
  CheckGround(t);
  if (target == EmitTarget::kPlain) return PrintTerm(t);
  Printer p(target, sig, opts);
  p.Print(t, 0);
  return p.Take();
}

std::string EmitTheorem(const std::string& name, const Term& t, EmitTarget target, const Signature& sig,
                        bool with_stubs, const EmitOptions& opts) {
  std::string statement = EmitTerm(t, target, sig, opts);
  if (target == EmitTarget::kPlain) return name + " : " + statement + "\n";

  std::string out;
  if (with_stubs) {
    std::set<std::string> consts;
    CollectConsts(t, &consts);
    std::vector<std::pair<std::string, SemType>> typed;
    std::set<std::string> types;
    MapTypes(t, [&](const SemType& ty) {
      CollectBaseTypes(ty, &types);
      return ty;
    });
    for (const auto& c : consts) {
      if (IsNumeral(c)) continue;
      auto ty = sig.ConstantType(c);
      if (!ty) continue;
      CollectBaseTypes(*ty, &types);
      typed.emplace_back(c, *ty);
    }
    bool lean = target == EmitTarget::kLean4;
    for (const auto& ty : types) {
      auto it = sig.types().find(ty);
      if (it != sig.types().end() && !Rendering(it->second, target).empty()) continue;
      out += lean ? "axiom " + ty + " : Type\n" : "Parameter " + ty + " : Type.\n";
    }
    for (const auto& [c, ty] : typed) {
      std::string text = EmitType(ty, target, sig);
      out += lean ? "axiom " + c + " : " + text + "\n" : "Parameter " + c + " : " + text + ".\n";
    }
    if (!out.empty()) out += "\n";
  }
  if (target == EmitTarget::kLean4) {
    out += "theorem " + name + " : " + statement + " := by sorry\n";
  } else {
    out += "Theorem " + name + " : " + statement + ". Admitted.\n";
  }
  return out;
}

}  // namespace catspec
