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

#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>

#include "catspec/syntax.hpp"

namespace catspec::testing {

using nlohmann::json;

const Lexicon& DemoLexicon() {
  static const Lexicon lex = LoadLexiconFiles(DemoLexiconPaths());
  return lex;
}

const Lexicon& FuzzLexicon() {
  static const Lexicon lex = LoadLexiconFiles({FixturePath("fuzz.toml")});
  return lex;
}

std::string FixturePath(const std::string& name) { return std::string(CATSPEC_TEST_DIR) + "/fixtures/" + name; }

std::string CorpusPath(const std::string& name) { return DataDir() + "/corpus/" + name; }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Term Prop(const std::string& text, const Lexicon& lex) {
  SemType prop = SemType::Truth();
  return ParseTerm(text, lex.signature(), {}, &prop);
}

CorpusFile ShippedCorpus(const std::string& name) {
  CorpusFile f = LoadCorpus(CorpusPath(name));
  ResolveCorpus(&f, DemoLexicon());
  return f;
}

// ---------------------------------------------------------------------------

std::vector<std::string> FuzzSentences(int count, std::uint32_t seed, int max_tokens) {
  static const std::vector<std::string> kTemplates = {
      "{np} is {adj}",
      "{np} is {adj} and {adj}",
      "{np} is {adj} or {adj}",
      "{np} is {adj} implies {np} is {adj}",
      "{q} {cn} is {adj}",
      "{q} {cn} relates {np}",
      "{np} relates {np}",
      "{np} never relates any {cn}",
      "surely {np} is {adj}",
      "not {q} {cn} is {adj}",
      "{np} is {adj} indeed",
      "{q} good thing owns {np}",
      "{q} thing which is good owns {np}",
      "{np} always relates {np}",
      "{np} is {np}",
      "{np} relates {np} and {np} is {adj}",
      "{q} {cn} never is {adj}",
  };
  static const std::map<std::string, std::vector<std::string>> kSlots = {
      {"np", {"one", "uno", "2", "f applied one", "one twice", "f applied 3 twice"}},
      {"adj", {"p", "q"}},
      {"cn", {"number", "p number", "number which is q"}},
      {"q", {"every", "each", "some"}},
  };
  std::mt19937 rng(seed);
  auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  std::vector<std::string> words = FuzzLexicon().Words();
  words.push_back("7");
  std::vector<std::string> out;
  while (static_cast<int>(out.size()) < count) {
    std::string s;
    if (rng() % 2 == 0) {
      std::string t = pick(kTemplates);
      for (std::size_t i = 0; i < t.size();) {
        if (t[i] == '{') {
          std::size_t j = t.find('}', i);
          s += pick(kSlots.at(t.substr(i + 1, j - i - 1)));
          i = j + 1;
        } else {
          s += t[i++];
        }
      }
    } else {
      int n = 1 + static_cast<int>(rng() % max_tokens);
      for (int i = 0; i < n; ++i) s += (i ? " " : "") + pick(words);
    }
    std::istringstream ss(s);
    int tokens = 0;
    for (std::string w; ss >> w;) ++tokens;
    if (tokens <= max_tokens) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

Term TermGen::Leaf(const SemType& type) {
  std::vector<Term> options;
  for (const auto& b : scope_) {
    if (b.type == type) options.push_back(Term::Var(b.name, b.type));
  }
  for (const auto& [name, ty] : sig_.constants()) {
    if (ty == type) options.push_back(Term::Const(name, ty));
  }
  if (sig_.numeral_type() && type == SemType::Base(*sig_.numeral_type())) {
    options.push_back(Term::Const(std::to_string(rng_() % 10), type));
  }
  if (type.is_truth()) options.push_back(Term::Lit(rng_() % 2 == 0));
  if (type.is_arrow()) {
    std::string x = "v" + std::to_string(next_name_++);
    scope_.push_back({x, type.first()});
    Term body = Leaf(type.second());
    scope_.pop_back();
    options.push_back(Term::Lam(x, type.first(), body));
  }
  if (type.is_prod()) options.push_back(Term::Pair(Leaf(type.first()), Leaf(type.second())));
  if (options.empty()) throw std::runtime_error("no closed term of type " + type.str());
  return options[rng_() % options.size()];
}

SemType TermGen::RandomBase() {
  auto it = sig_.types().begin();
  std::advance(it, rng_() % sig_.types().size());
  return SemType::Base(it->first);
}

Term TermGen::Gen(const SemType& type, int depth) {
  if (depth <= 0) return Leaf(type);
  auto binder = [&](Term::Kind kind, const SemType& bt, const SemType& body_type) {
    std::string x = rng_() % 4 == 0 && !scope_.empty() ? scope_.back().name : "v" + std::to_string(next_name_++);
    scope_.push_back({x, bt});
    Term body = Gen(body_type, depth - 1);
    scope_.pop_back();
    return Term::Binder(kind, x, bt, body);
  };
  // Function constants or variables whose result is `type`.
  std::vector<std::pair<Term, std::vector<SemType>>> heads;
  auto consider = [&](Term head, SemType ty) {
    std::vector<SemType> args;
    while (true) {
      if (ty == type && !args.empty()) heads.emplace_back(head, args);
      if (!ty.is_arrow()) break;
      args.push_back(ty.first());
      ty = ty.second();
    }
  };
  for (const auto& [name, ty] : sig_.constants()) consider(Term::Const(name, ty), ty);
  for (const auto& b : scope_) consider(Term::Var(b.name, b.type), b.type);

  int choice = static_cast<int>(rng_() % 10);
  if (type.is_arrow()) return binder(Term::Kind::kLam, type.first(), type.second());
  if (choice == 0) {
    // A beta-redex.
    SemType at = sig_.numeral_type() ? SemType::Base(*sig_.numeral_type()) : SemType::Truth();
    Term fn = binder(Term::Kind::kLam, at, type);
    return Term::App(fn, Gen(at, depth - 1));
  }
  if (type.is_truth() && choice < 7) {
    switch (rng_() % 7) {
      case 0: return Term::And(Gen(type, depth - 1), Gen(type, depth - 1));
      case 1: return Term::Or(Gen(type, depth - 1), Gen(type, depth - 1));
      case 2: return Term::Implies(Gen(type, depth - 1), Gen(type, depth - 1));
      case 3: return Term::Not(Gen(type, depth - 1));
      case 4: {
        SemType bt = RandomBase();
        return binder(rng_() % 2 ? Term::Kind::kForAll : Term::Kind::kExists, bt, type);
      }
      case 5: {
        SemType et = RandomBase();
        return Term::Eq(et, Gen(et, depth - 1), Gen(et, depth - 1));
      }
      default: break;
    }
  }
  if (!heads.empty() && choice < 9) {
    auto [head, args] = heads[rng_() % heads.size()];
    Term t = head;
    for (const auto& a : args) t = Term::App(t, Gen(a, depth - 1));
    return t;
  }
  return Leaf(type);
}

// ---------------------------------------------------------------------------
// Certificate mutation.

namespace {

struct Site {
  Term sub;
  std::vector<std::pair<std::string, SemType>> scope;
};

SemType LocalType(const Term& t, const std::vector<std::pair<std::string, SemType>>& scope) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst: return t.type();
    case Term::Kind::kLam: {
      auto inner = scope;
      inner.emplace_back(t.name(), t.type());
      return SemType::Arrow(t.type(), LocalType(t.body(), inner));
    }
    case Term::Kind::kApp: return LocalType(t.fn(), scope).second();
    case Term::Kind::kPair: return SemType::Prod(LocalType(t.lhs(), scope), LocalType(t.rhs(), scope));
    case Term::Kind::kFst: return LocalType(t.operand(), scope).first();
    case Term::Kind::kSnd: return LocalType(t.operand(), scope).second();
    default: return SemType::Truth();
  }
}

void Sites(const Term& t, std::vector<std::pair<std::string, SemType>>* scope, std::vector<Site>* out) {
  out->push_back({t, *scope});
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
    case Term::Kind::kTruthLit: return;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists:
      scope->emplace_back(t.name(), t.type());
      Sites(t.body(), scope, out);
      scope->pop_back();
      return;
    case Term::Kind::kNot:
    case Term::Kind::kFst:
    case Term::Kind::kSnd: Sites(t.operand(), scope, out); return;
    default:
      Sites(t.first(), scope, out);
      Sites(t.second(), scope, out);
  }
}

Term ReplaceAt(const Term& t, int* index, const Term& repl) {
  if ((*index)-- == 0) return repl;
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
    case Term::Kind::kTruthLit: return t;
    case Term::Kind::kLam:
    case Term::Kind::kForAll:
    case Term::Kind::kExists: return Term::Binder(t.kind(), t.name(), t.type(), ReplaceAt(t.body(), index, repl));
    case Term::Kind::kNot: return Term::Not(ReplaceAt(t.operand(), index, repl));
    case Term::Kind::kFst: return Term::Fst(ReplaceAt(t.operand(), index, repl));
    case Term::Kind::kSnd: return Term::Snd(ReplaceAt(t.operand(), index, repl));
    case Term::Kind::kApp: {
      Term f = ReplaceAt(t.fn(), index, repl);
      return Term::App(f, ReplaceAt(t.arg(), index, repl));
    }
    case Term::Kind::kEq: {
      Term l = ReplaceAt(t.lhs(), index, repl);
      return Term::Eq(t.type(), l, ReplaceAt(t.rhs(), index, repl));
    }
    default: {
      Term l = ReplaceAt(t.first(), index, repl);
      return Term::Binary(t.kind(), l, ReplaceAt(t.second(), index, repl));
    }
  }
}

// Local rewrites of one subterm, not all of them meaning-changing.
std::vector<Term> Rewrites(const Site& s, const Signature& sig) {
  const Term& t = s.sub;
  std::vector<Term> out;
  switch (t.kind()) {
    case Term::Kind::kConst:
      if (IsNumeral(t.name())) {
        out.push_back(Term::Const(std::to_string(std::stoll(t.name()) + 1), t.type()));
      } else {
        for (const auto& [name, ty] : sig.constants()) {
          if (ty == t.type() && name != t.name()) out.push_back(Term::Const(name, ty));
        }
      }
      break;
    case Term::Kind::kVar:
      for (const auto& [name, ty] : s.scope) {
        if (ty == t.type() && name != t.name()) out.push_back(Term::Var(name, ty));
      }
      break;
    case Term::Kind::kTruthLit: out.push_back(Term::Lit(!t.value())); break;
    case Term::Kind::kAnd:
      out.push_back(Term::Or(t.lhs(), t.rhs()));
      out.push_back(Term::And(t.rhs(), t.lhs()));
      break;
    case Term::Kind::kOr: out.push_back(Term::And(t.lhs(), t.rhs())); break;
    case Term::Kind::kImplies:
      out.push_back(Term::And(t.lhs(), t.rhs()));
      out.push_back(Term::Implies(t.rhs(), t.lhs()));
      break;
    case Term::Kind::kForAll: out.push_back(Term::Exists(t.name(), t.type(), t.body())); break;
    case Term::Kind::kExists: out.push_back(Term::ForAll(t.name(), t.type(), t.body())); break;
    case Term::Kind::kEq: out.push_back(Term::Eq(t.type(), t.rhs(), t.lhs())); break;
    default: break;
  }
  if (LocalType(t, s.scope).is_truth() && !t.is(Term::Kind::kTruthLit)) out.push_back(Term::Not(t));
  return out;
}

std::vector<std::string> TermMutations(const std::string& text, const std::vector<std::string>& vars,
                                       const Signature& sig, std::vector<bool>* exempt) {
  std::vector<std::string> out;
  Term orig;
  try {
    orig = ParseTerm(text, sig, vars);
  } catch (const std::exception&) {
    return out;
  }
  std::vector<Site> sites;
  std::vector<std::pair<std::string, SemType>> scope;
  Sites(orig, &scope, &sites);
  Term norm = BetaNormalize(orig);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    for (const Term& r : Rewrites(sites[i], sig)) {
      int index = static_cast<int>(i);
      Term m = ReplaceAt(orig, &index, r);
      out.push_back(PrintTerm(m));
      exempt->push_back(AlphaEq(BetaNormalize(m), norm));
    }
  }
  return out;
}

template <typename T>
void Sample(std::vector<T>* v, std::size_t n, std::mt19937* rng) {
  if (v->size() <= n) return;
  std::shuffle(v->begin(), v->end(), *rng);
  v->resize(n);
}

void MutateNode(const json& root, const json& node, const std::string& path, const Signature& sig,
                std::mt19937* rng, std::vector<Mutant>* out) {
  auto add = [&](const std::string& field, const json& value, const std::string& kind, bool exempt) {
    Mutant m{root, field, kind, exempt};
    m.doc[json::json_pointer(field)] = value;
    out->push_back(std::move(m));
  };
  // Rule name.
  for (const char* r : {"LEX", "FA", "BA", "FC", "BC", "LIFT", "COORD"}) {
    if (node["rule"] != r) add(path + "/rule", r, "rule", false);
  }
  // Span endpoints.
  for (int k = 0; k < 2; ++k) {
    for (int d : {-1, 1}) add(path + "/span/" + std::to_string(k), node["span"][k].get<int>() + d, "span", false);
  }
  // One category index.
  std::vector<std::string> names = {"Prop"};
  for (const auto& [name, r] : sig.types()) names.push_back(name);
  std::string cat = node["cat"];
  std::vector<std::pair<std::string, bool>> cats;
  std::regex word("[A-Za-z_][A-Za-z0-9_]*");
  for (auto it = std::sregex_iterator(cat.begin(), cat.end(), word); it != std::sregex_iterator(); ++it) {
    std::string w = it->str();
    // Only words inside an index <...>, not category names.
    std::size_t pos = it->position();
    if (std::count(cat.begin(), cat.begin() + pos, '<') == std::count(cat.begin(), cat.begin() + pos, '>')) continue;
    for (const auto& n : names) {
      if (n == w) continue;
      cats.emplace_back(cat.substr(0, pos) + n + cat.substr(pos + w.size()), false);
    }
  }
  Sample(&cats, 3, rng);
  for (const auto& [c, e] : cats) add(path + "/cat", c, "cat", e);

  std::vector<std::string> vars;
  if (node.contains("vars")) vars = node["vars"].get<std::vector<std::string>>();
  auto sem_mutants = [&](const std::string& field, const std::string& text, const std::vector<std::string>& v,
                         const std::string& kind) {
    std::vector<bool> exempt;
    auto texts = TermMutations(text, v, sig, &exempt);
    std::vector<std::size_t> idx(texts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    Sample(&idx, 4, rng);
    for (std::size_t i : idx) add(field, texts[i], kind, exempt[i]);
  };
  sem_mutants(path + "/sem", node["sem"], vars, "sem");
  if (node.contains("entry")) {
    const json& e = node["entry"];
    sem_mutants(path + "/entry/sem", e["sem"], e["vars"].get<std::vector<std::string>>(), "entry-sem");
  }
  for (const char* k : {"child", "left", "right"}) {
    if (node.contains(k)) MutateNode(root, node[k], path + "/" + k, sig, rng, out);
  }
}

}  // namespace

std::vector<Mutant> Mutants(const json& cert, const Signature& sig, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<Mutant> out;
  MutateNode(cert, cert["derivation"], "/derivation", sig, &rng, &out);
  std::vector<bool> exempt;
  auto results = TermMutations(cert["result"], {}, sig, &exempt);
  for (std::size_t i = 0; i < results.size() && i < 4; ++i) {
    Mutant m{cert, "/result", "result", false};
    // The recorded result is compared after normalization of the root only.
    Term orig = ParseTerm(cert["result"].get<std::string>(), sig);
    Term mut = ParseTerm(results[i], sig);
    m.exempt = AlphaEq(mut, orig);
    m.doc["result"] = results[i];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace catspec::testing
