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

#include "catspec/parser.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <sstream>

namespace catspec {

UnknownWord::UnknownWord(std::string word, std::vector<std::string> hints)
    : ParseError("unknown word: " + word), word_(std::move(word)), hints_(std::move(hints)) {}

TokenSeq Tokenize(std::string_view input) {
  TokenSeq ts;
  std::istringstream in{std::string(input)};
  std::string tok;
  while (in >> tok) ts.tokens.push_back(tok);
  if (ts.tokens.empty()) throw EmptyInput();
  return ts;
}

namespace {

std::size_t EditDistance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::string> NearestWords(const std::string& word, const Lexicon& lex) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  std::size_t budget = std::max<std::size_t>(2, word.size() / 3);
  for (const auto& w : lex.Words()) {
    std::size_t d = EditDistance(word, w);
    if (d <= budget) scored.emplace_back(d, w);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < 3; ++i) out.push_back(scored[i].second);
  return out;
}

struct Item {
  Item(int s, int e, Cat c, Term t, Rule r = Rule::kLex, int left = -1, int right = -1, TypeSubst u = {})
      : start(s), end(e), cat(std::move(c)), sem(std::move(t)), rule(r), a(left), b(right), subst(std::move(u)) {}

  int start = 0, end = 0;
  Cat cat;
  Term sem;
  Rule rule = Rule::kLex;
  int a = -1, b = -1;
  TypeSubst subst;  // unifier found when this item was built
  // Leaves.
  int leaf = -1;  // index into Engine::leaves_
  bool numeral = false;
  bool placeholder = false;  // an uninstantiated coordinator
  // Built from a coordinator and its right conjunct (X\X, or (X\X)/Z via
  // composition); such a phrase only meets its left conjunct by BA.
  bool conj = false;
  Term::Kind op = Term::Kind::kAnd;
};

// Item store plus the combination rules.  Shared by the chart parser and the
// bracketing oracle.
class Engine {
 public:
  Engine(const TokenSeq& ts, const Lexicon& lex, const ParseOptions& opts)
      : ts_(ts), lex_(lex), opts_(opts) {}

  const Item& item(int id) const { return items_[id]; }
  ParseStats& stats() { return stats_; }

  void CheckVocabulary() const {
    for (const auto& t : ts_.tokens) {
      bool numeral = IsNumeral(t) && lex_.signature().numeral_type();
      if (!numeral && !lex_.Knows(t)) throw UnknownWord(t, NearestWords(t, lex_));
    }
  }

  std::vector<int> Seed(int i) {
    std::vector<int> out;
    const std::string& t = ts_.tokens[i];
    if (IsNumeral(t) && lex_.signature().numeral_type()) {
      Spend();
      SemType nt = SemType::Base(*lex_.signature().numeral_type());
      Item it{i, i + 1, Cat::NP(nt), Term::Const(t, nt)};
      it.numeral = true;
      out.push_back(Add(std::move(it)));
    }
    if (auto c = lex_.coordinators().find(t); c != lex_.coordinators().end()) {
      Spend();
      Item it{i, i + 1, Cat::S(), Term::Lit(true), Rule::kCoord};
      it.placeholder = true;
      it.op = c->second;
      out.push_back(Add(std::move(it), /*check=*/false));
    }
    std::vector<LexEntry> entries = lex_.Lookup(t, &fresh_, opts_.features);
    if (static_cast<int>(entries.size()) > opts_.limits.max_entries_per_word) {
      throw TooManyEntries(t, static_cast<int>(entries.size()), opts_.limits.max_entries_per_word);
    }
    std::vector<const LexEntry*> seen;
    for (LexEntry& e : entries) {
      Spend();
      const LexEntry* original = lex_.Find(e.where.file, e.word, e.ordinal);
      // Identical entries (for instance one file loaded twice) give one item.
      bool dup = std::any_of(seen.begin(), seen.end(), [&](const LexEntry* s) {
        return s->cat_text == original->cat_text && s->sem_text == original->sem_text &&
               s->ty_vars == original->ty_vars && s->feature == original->feature;
      });
      if (dup) continue;
      seen.push_back(original);
      Item it{i, i + 1, e.cat, e.sem};
      it.leaf = static_cast<int>(leaves_.size());
      leaves_.push_back(original);
      out.push_back(Add(std::move(it)));
    }
    Close(&out);
    return out;
  }

  // All items built from left and right by one binary rule.
  void Combine(int l, int r, std::vector<int>* out) {
    if (items_[r].placeholder) return;
    if (items_[l].placeholder) {
      Coordinate(l, r, out);
      return;
    }
    TryForwardApp(l, r, out);
    TryBackwardApp(l, r, out);
    TryForwardComp(l, r, out);
    TryBackwardComp(l, r, out);
  }

  // Adds adjective lifts of the ADJ items in *ids.
  void Close(std::vector<int>* ids) {
    std::size_t n = ids->size();
    for (std::size_t k = 0; k < n; ++k) {
      const Item& it = items_[(*ids)[k]];
      if (it.placeholder || !it.cat.is(Cat::Kind::kADJ)) continue;
      Spend();
      Item lifted{it.start, it.end, AdjectiveLiftCat(it.cat),
                  BetaNormalize(Term::App(AdjectiveLiftSem(it.cat.index()), it.sem)), Rule::kLift, (*ids)[k]};
      ids->push_back(Add(std::move(lifted)));
    }
  }

  DerivPtr Extract(int id, const TypeSubst& acc) const {
    const Item& it = items_[id];
    auto node = std::make_shared<DerivNode>();
    node->rule = it.rule;
    node->start = it.start;
    node->end = it.end;
    node->cat = ApplySubst(acc, it.cat);
    node->sem = ApplySubst(acc, it.sem);
    if (it.a < 0) {
      node->token = ts_.tokens[it.start];
      node->numeral = it.numeral;
      node->coord_op = it.op;
      if (it.leaf >= 0) node->entry = *leaves_[it.leaf];
      return node;
    }
    TypeSubst below = it.subst.Then(acc);
    node->kids.push_back(Extract(it.a, below));
    if (it.b >= 0) node->kids.push_back(Extract(it.b, below));
    return node;
  }

  bool IsSentence(int id) const {
    const Item& it = items_[id];
    return !it.placeholder && it.cat.is(Cat::Kind::kS) && it.start == 0 &&
           it.end == static_cast<int>(ts_.size());
  }

 private:
  void Spend() {
    if (++stats_.rule_attempts > opts_.limits.fuel) throw FuelExhausted(opts_.limits.fuel);
  }

  int Add(Item it, bool check = true) {
    if (check && opts_.check_invariants) {
      ++stats_.invariant_checks;
      try {
        if (TypeOf(it.sem, lex_.signature()) != Interp(it.cat)) ++stats_.invariant_violations;
      } catch (const TypeError&) {
        ++stats_.invariant_violations;
      }
    }
    ++stats_.items;
    items_.push_back(std::move(it));
    return static_cast<int>(items_.size()) - 1;
  }

  void Emit(int l, int r, Rule rule, const TypeSubst& s, Cat cat, const Term& sem, std::vector<int>* out) {
    Item it{items_[l].start, items_[r].end, std::move(cat), BetaNormalize(ApplySubst(s, sem)), rule, l, r, s};
    const Item& functor = items_[l];
    it.conj = (rule == Rule::kFA || rule == Rule::kFC) && (functor.rule == Rule::kCoord || functor.conj);
    out->push_back(Add(std::move(it)));
  }

  bool Pruned(bool violates) {
    if (opts_.eisner && violates) {
      ++stats_.pruned_by_normal_form;
      return true;
    }
    return false;
  }

  // X/Y + Y => X
  void TryForwardApp(int l, int r, std::vector<int>* out) {
    Spend();
    const Item& f = items_[l];
    const Item& a = items_[r];
    if (!f.cat.is(Cat::Kind::kRSlash)) return;
    TypeSubst s;
    if (!UnifyCats(f.cat.arg(), a.cat, &s)) return;
    if (Pruned(f.rule == Rule::kFC)) return;
    Emit(l, r, Rule::kFA, s, ApplySubst(s, f.cat.result()), Term::App(f.sem, a.sem), out);
  }

  // Y + Y\X => X
  void TryBackwardApp(int l, int r, std::vector<int>* out) {
    Spend();
    const Item& a = items_[l];
    const Item& f = items_[r];
    if (!f.cat.is(Cat::Kind::kLSlash)) return;
    TypeSubst s;
    if (!UnifyCats(f.cat.arg(), a.cat, &s)) return;
    if (Pruned(f.rule == Rule::kBC)) return;
    Emit(l, r, Rule::kBA, s, ApplySubst(s, f.cat.result()), Term::App(f.sem, a.sem), out);
  }

  // X/Y + Y/Z => X/Z
  void TryForwardComp(int l, int r, std::vector<int>* out) {
    Spend();
    const Item& f = items_[l];
    const Item& g = items_[r];
    if (!f.cat.is(Cat::Kind::kRSlash) || !g.cat.is(Cat::Kind::kRSlash) || g.conj) return;
    TypeSubst s;
    if (!UnifyCats(f.cat.arg(), g.cat.result(), &s)) return;
    if (Pruned(f.rule == Rule::kFC)) return;
    SemType zt = Interp(g.cat.arg());
    std::string z = FreshName("z", Names(f.sem, g.sem));
    Term sem = Term::Lam(z, zt, Term::App(f.sem, Term::App(g.sem, Term::Var(z, zt))));
    Emit(l, r, Rule::kFC, s, ApplySubst(s, Cat::RSlash(f.cat.result(), g.cat.arg())), sem, out);
  }

  // A\B + B\C => A\C
  void TryBackwardComp(int l, int r, std::vector<int>* out) {
    Spend();
    const Item& g = items_[l];
    const Item& f = items_[r];
    if (!g.cat.is(Cat::Kind::kLSlash) || !f.cat.is(Cat::Kind::kLSlash) || g.conj || f.conj) return;
    TypeSubst s;
    if (!UnifyCats(g.cat.result(), f.cat.arg(), &s)) return;
    if (Pruned(f.rule == Rule::kBC)) return;
    SemType at = Interp(g.cat.arg());
    std::string a = FreshName("a", Names(f.sem, g.sem));
    Term sem = Term::Lam(a, at, Term::App(f.sem, Term::App(g.sem, Term::Var(a, at))));
    Emit(l, r, Rule::kBC, s, ApplySubst(s, Cat::LSlash(g.cat.arg(), f.cat.result())), sem, out);
  }

  // A coordinator directly left of r: instantiated at r's category for
  // application, or at r's result category for composition.
  void Coordinate(int l, int r, std::vector<int>* out) {
    Cat target = items_[r].cat;
    for (int pass = 0; pass < 2; ++pass) {
      Spend();
      if (pass == 1) {
        if (!items_[r].cat.is(Cat::Kind::kRSlash)) return;
        target = items_[r].cat.result();
      }
      auto inst = InstantiateCoordinator(items_[l].op, target, opts_.limits.max_lift);
      if (!inst) continue;
      int coord = CoordItem(l, *inst);
      if (pass == 0) {
        TryForwardApp(coord, r, out);
      } else {
        TryForwardComp(coord, r, out);
      }
    }
  }

  int CoordItem(int placeholder, const Coordination& inst) {
    const Item& p = items_[placeholder];
    for (int id : coord_items_) {
      const Item& c = items_[id];
      if (c.start == p.start && c.op == p.op && c.cat == inst.cat) return id;
    }
    Item it{p.start, p.end, inst.cat, inst.sem, Rule::kCoord};
    it.op = p.op;
    int id = Add(std::move(it));
    coord_items_.push_back(id);
    return id;
  }

  static std::set<std::string> Names(const Term& a, const Term& b) {
    std::set<std::string> out = a.FreeVars();
    std::set<std::string> more = b.FreeVars();
    out.insert(more.begin(), more.end());
    return out;
  }

  const TokenSeq& ts_;
  const Lexicon& lex_;
  const ParseOptions& opts_;
  std::vector<Item> items_;
  std::vector<const LexEntry*> leaves_;
  std::vector<int> coord_items_;
  FreshSupply fresh_;
  ParseStats stats_;
};

std::vector<std::pair<Term, int>> Grouped(const std::vector<Term>& terms) {
  std::vector<std::pair<Term, int>> out;  // representative, first index
  for (std::size_t i = 0; i < terms.size(); ++i) {
    bool found = false;
    for (const auto& [rep, first] : out) found = found || AlphaEq(rep, terms[i]);
    if (!found) out.emplace_back(terms[i], static_cast<int>(i));
  }
  return out;
}

}  // namespace

std::vector<Term> DistinctUpToAlpha(const std::vector<Term>& terms) {
  std::vector<Term> out;
  for (const auto& [rep, first] : Grouped(terms)) out.push_back(rep);
  return out;
}

bool SameClassSets(const std::vector<Term>& a, const std::vector<Term>& b) {
  auto da = DistinctUpToAlpha(a);
  auto db = DistinctUpToAlpha(b);
  if (da.size() != db.size()) return false;
  for (const auto& t : da) {
    if (std::none_of(db.begin(), db.end(), [&](const Term& u) { return AlphaEq(t, u); })) return false;
  }
  return true;
}

ParseResult Parse(const TokenSeq& ts, const Lexicon& lex, const ParseOptions& opts) {
  if (ts.tokens.empty()) throw EmptyInput();
  auto t0 = std::chrono::steady_clock::now();
  Engine engine(ts, lex, opts);
  engine.CheckVocabulary();
  int n = static_cast<int>(ts.size());
  std::vector<std::vector<int>> cells((n + 1) * (n + 1));
  auto cell = [&](int s, int e) -> std::vector<int>& { return cells[s * (n + 1) + e]; };
  for (int width = 1; width <= n; ++width) {
    for (int start = 0; start + width <= n; ++start) {
      int end = start + width;
      std::vector<int>& here = cell(start, end);
      if (width == 1) {
        here = engine.Seed(start);
        continue;
      }
      for (int mid = start + 1; mid < end; ++mid) {
        for (int l : cell(start, mid)) {
          for (int r : cell(mid, end)) engine.Combine(l, r, &here);
        }
      }
      engine.Close(&here);
    }
  }

  ParseResult result;
  std::vector<Term> normalized;
  for (int id : cell(0, n)) {
    if (!engine.IsSentence(id)) continue;
    if (engine.item(id).sem.HasTypeVars()) {
      ++engine.stats().nonground_roots;
      continue;
    }
    Derivation d{ts.tokens, engine.Extract(id, TypeSubst())};
    normalized.push_back(d.result());
    result.derivations.push_back(std::move(d));
  }
  result.stats = engine.stats();
  if (result.derivations.empty()) throw NoParse(result.stats);
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    auto it = std::find_if(result.classes.begin(), result.classes.end(),
                           [&](const SemClass& c) { return AlphaEq(c.sem, normalized[i]); });
    if (it == result.classes.end()) {
      result.classes.push_back(SemClass{normalized[i], {static_cast<int>(i)}});
    } else {
      it->derivations.push_back(static_cast<int>(i));
    }
  }
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

ParseResult Parse(std::string_view sentence, const Lexicon& lex, const ParseOptions& opts) {
  return Parse(Tokenize(sentence), lex, opts);
}

namespace {

struct Bracketing {
  int start, end;
  std::shared_ptr<const Bracketing> left, right;
};

using BracketPtr = std::shared_ptr<const Bracketing>;

std::vector<BracketPtr> AllBracketings(int start, int end) {
  if (end - start == 1) return {std::make_shared<const Bracketing>(Bracketing{start, end, nullptr, nullptr})};
  std::vector<BracketPtr> out;
  for (int mid = start + 1; mid < end; ++mid) {
    for (const auto& l : AllBracketings(start, mid)) {
      for (const auto& r : AllBracketings(mid, end)) {
        out.push_back(std::make_shared<const Bracketing>(Bracketing{start, end, l, r}));
      }
    }
  }
  return out;
}

std::vector<int> Evaluate(const Bracketing& b, Engine* engine, const std::vector<std::vector<int>>& leaves) {
  if (!b.left) return leaves[b.start];
  std::vector<int> ls = Evaluate(*b.left, engine, leaves);
  std::vector<int> rs = Evaluate(*b.right, engine, leaves);
  std::vector<int> out;
  for (int l : ls) {
    for (int r : rs) engine->Combine(l, r, &out);
  }
  engine->Close(&out);
  return out;
}

}  // namespace

std::vector<Term> NaiveEnumerate(const TokenSeq& ts, const Lexicon& lex, const ParseOptions& opts) {
  if (ts.tokens.empty()) throw EmptyInput();
  if (ts.size() > 8) throw std::invalid_argument("NaiveEnumerate is limited to 8 tokens");
  ParseOptions naive = opts;
  naive.eisner = false;
  Engine engine(ts, lex, naive);
  engine.CheckVocabulary();
  int n = static_cast<int>(ts.size());
  std::vector<std::vector<int>> leaves;
  for (int i = 0; i < n; ++i) leaves.push_back(engine.Seed(i));
  std::vector<Term> sems;
  for (const auto& tree : AllBracketings(0, n)) {
    for (int id : Evaluate(*tree, &engine, leaves)) {
      if (!engine.IsSentence(id) || engine.item(id).sem.HasTypeVars()) continue;
      sems.push_back(Simplify(BetaNormalize(engine.item(id).sem)));
    }
  }
  if (sems.empty()) throw NoParse();
  return DistinctUpToAlpha(sems);
}

Ambiguity ClassifyAmbiguity(const ParseResult& r) {
  Ambiguity a;
  a.classes = r.classes;
  a.unique = r.classes.size() == 1;
  return a;
}

}  // namespace catspec
