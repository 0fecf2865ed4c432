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

#include "catspec/certificate.hpp"

#include <functional>
#include <optional>

#include "catspec/syntax.hpp"

namespace catspec {

using nlohmann::json;

namespace {

void CollectBaseTypes(const SemType& t, std::set<std::string>* out) {
  switch (t.kind()) {
    case SemType::Kind::kBase: out->insert(t.name()); break;
    case SemType::Kind::kArrow:
    case SemType::Kind::kProd:
      CollectBaseTypes(t.first(), out);
      CollectBaseTypes(t.second(), out);
      break;
    default: break;
  }
}

void CollectTermSignature(const Term& t, std::set<std::string>* consts, std::set<std::string>* types) {
  MapTypes(t, [&](const SemType& ty) {
    CollectBaseTypes(ty, types);
    return ty;
  });
  std::function<void(const Term&)> walk = [&](const Term& u) {
    switch (u.kind()) {
      case Term::Kind::kConst:
        if (!IsNumeral(u.name())) consts->insert(u.name());
        return;
      case Term::Kind::kVar:
      case Term::Kind::kTruthLit: return;
      case Term::Kind::kLam:
      case Term::Kind::kForAll:
      case Term::Kind::kExists:
      case Term::Kind::kNot:
      case Term::Kind::kFst:
      case Term::Kind::kSnd: walk(u.first()); return;
      default:
        walk(u.first());
        walk(u.second());
    }
  };
  walk(t);
}

std::vector<std::string> NodeVars(const DerivNode& n) {
  std::set<std::string> vars;
  n.cat.CollectVars(&vars);
  MapTypes(n.sem, [&](const SemType& ty) {
    ty.CollectVars(&vars);
    return ty;
  });
  return {vars.begin(), vars.end()};
}

json EmitNode(const DerivNode& n, std::set<std::string>* consts, std::set<std::string>* types) {
  json j;
  j["rule"] = RuleName(n.rule);
  j["span"] = json::array({n.start, n.end});
  j["cat"] = n.cat.str();
  j["sem"] = PrintTerm(n.sem);
  if (auto vars = NodeVars(n); !vars.empty()) j["vars"] = vars;
  CollectTermSignature(n.sem, consts, types);
  CollectBaseTypes(Interp(n.cat), types);
  switch (n.rule) {
    case Rule::kLex:
      j["token"] = n.token;
      if (n.numeral) {
        j["numeral"] = true;
      } else if (n.entry) {
        const LexEntry& e = *n.entry;
        j["entry"] = {{"file", e.where.file}, {"word", e.word},       {"ordinal", e.ordinal},
                      {"vars", e.ty_vars},    {"cat", e.cat.str()},   {"sem", PrintTerm(e.sem)}};
        CollectTermSignature(e.sem, consts, types);
      }
      break;
    case Rule::kCoord:
      j["token"] = n.token;
      j["op"] = CoordOpName(n.coord_op);
      break;
    case Rule::kLift: j["child"] = EmitNode(*n.kids.at(0), consts, types); break;
    default:
      j["left"] = EmitNode(*n.kids.at(0), consts, types);
      j["right"] = EmitNode(*n.kids.at(1), consts, types);
  }
  return j;
}

}  // namespace

json EmitCertificate(const Derivation& d, const Signature& sig, const CertificateMeta& meta) {
  std::set<std::string> consts, types;
  json doc;
  doc["format_version"] = kCertificateFormatVersion;
  doc["generator"] = meta.generator;
  doc["tokens"] = d.tokens;
  doc["limits"] = {{"max_lift", meta.max_lift},
                   {"fuel", meta.fuel},
                   {"max_entries_per_word", meta.max_entries_per_word}};
  doc["features"] = std::vector<std::string>(meta.features.begin(), meta.features.end());
  doc["derivation"] = EmitNode(*d.root, &consts, &types);
  doc["result"] = PrintTerm(d.result());

  json constants = json::object();
  for (const auto& c : consts) {
    if (auto ty = sig.ConstantType(c)) {
      constants[c] = ty->str();
      CollectBaseTypes(*ty, &types);
    }
  }
  json sig_types = json::object();
  if (sig.numeral_type()) types.insert(*sig.numeral_type());
  for (const auto& t : types) {
    auto it = sig.types().find(t);
    if (it == sig.types().end()) continue;
    json r = json::object();
    if (!it->second.lean.empty()) r["lean"] = it->second.lean;
    if (!it->second.coq.empty()) r["coq"] = it->second.coq;
    sig_types[t] = r;
  }
  doc["signature"] = {{"types", sig_types}, {"constants", constants}};
  if (sig.numeral_type()) doc["signature"]["numeral_type"] = *sig.numeral_type();
  return doc;
}

std::string SerializeCertificate(const json& doc) { return doc.dump(2) + "\n"; }

json ParseCertificateText(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateFormatError(std::string("certificate is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Checking

const char* FailureReasonName(FailureReason r) {
  switch (r) {
    case FailureReason::kUnknownRule: return "UnknownRule";
    case FailureReason::kCatMismatch: return "CatMismatch";
    case FailureReason::kSemMismatch: return "SemMismatch";
    case FailureReason::kLexMismatch: return "LexMismatch";
    case FailureReason::kTypeError: return "TypeError";
    case FailureReason::kSpanError: return "SpanError";
  }
  return "?";
}

bool Verdict::Has(FailureReason r) const {
  for (const auto& f : failures) {
    if (f.reason == r) return true;
  }
  return false;
}

namespace {

// What a node claims about itself, once its fields have been read.
struct Claim {
  int start = 0, end = 0;
  std::optional<Cat> cat;
  std::optional<Term> sem;
};

class Checker {
 public:
  Checker(const json& doc, const Lexicon* lex) : doc_(doc), lex_(lex) {}

  Verdict Run() {
    if (!doc_.is_object()) throw CertificateFormatError("certificate must be a JSON object");
    if (doc_.value("format_version", -1) != kCertificateFormatVersion) {
      throw CertificateFormatError("unsupported format_version (expected " +
                                   std::to_string(kCertificateFormatVersion) + ")");
    }
    tokens_ = Get<std::vector<std::string>>(doc_, "tokens", "/tokens");
    const json& limits = Field(doc_, "limits", "/limits");
    max_lift_ = Get<int>(limits, "max_lift", "/limits/max_lift");
    LoadSignature();
    const json& root = Field(doc_, "derivation", "/derivation");
    Claim c = Node(root, "/derivation");
    if (c.start != 0 || c.end != static_cast<int>(tokens_.size())) {
      Fail("/derivation", FailureReason::kSpanError, "root span does not cover the sentence");
    }
    if (c.cat && !c.cat->is(Cat::Kind::kS)) Fail("/derivation", FailureReason::kCatMismatch, "root category is not S");
    std::string result_text = Get<std::string>(doc_, "result", "/result");
    if (c.sem) {
      Term expected = Simplify(BetaNormalize(*c.sem));
      std::optional<Term> result = ReadSem(result_text, Cat::S(), {}, "/result");
      if (result && !AlphaEq(*result, expected)) {
        Fail("/result", FailureReason::kSemMismatch, "recorded result differs from the root semantics: expected " +
                                                         PrintTerm(expected));
      }
    }
    return std::move(verdict_);
  }

 private:
  [[noreturn]] static void Malformed(const std::string& path, const std::string& what) {
    throw CertificateFormatError("malformed certificate at " + path + ": " + what);
  }

  static const json& Field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) Malformed(path, "missing field");
    return obj.at(key);
  }

  template <typename T>
  static T Get(const json& obj, const char* key, const std::string& path) {
    try {
      return Field(obj, key, path).get<T>();
    } catch (const json::exception&) {
      Malformed(path, "field has the wrong type");
    }
  }

  void Fail(const std::string& path, FailureReason r, const std::string& detail) {
    verdict_.failures.push_back({path, r, detail});
  }

  void LoadSignature() {
    if (lex_) {
      sig_ = lex_->signature();
      return;
    }
    const json& s = Field(doc_, "signature", "/signature");
    try {
      for (const auto& [name, r] : Field(s, "types", "/signature/types").items()) {
        sig_.AddType(name, TypeRendering{r.value("lean", ""), r.value("coq", "")});
      }
      for (const auto& [name, ty] : Field(s, "constants", "/signature/constants").items()) {
        sig_.AddConstant(name, ParseType(ty.get<std::string>(), &sig_));
      }
      if (s.contains("numeral_type")) sig_.SetNumeralType(s.at("numeral_type").get<std::string>());
    } catch (const json::exception& e) {
      Malformed("/signature", e.what());
    } catch (const std::exception& e) {
      Fail("/signature", FailureReason::kTypeError, e.what());
    }
  }

  std::optional<Cat> ReadCat(const std::string& text, const std::vector<std::string>& vars, const std::string& path) {
    try {
      return ParseCat(text, &sig_, vars, lex_ ? &lex_->macros() : nullptr);
    } catch (const SyntaxError& e) {
      Fail(path, FailureReason::kCatMismatch, "unreadable category '" + text + "': " + e.what());
      return std::nullopt;
    }
  }

  // Reads a semantics field and checks that it has type interp(cat).
  std::optional<Term> ReadSem(const std::string& text, const Cat& cat, const std::vector<std::string>& vars,
                              const std::string& path) {
    try {
      Term t = ParseTerm(text, sig_, vars);
      SemType want = Interp(cat);
      SemType got = TypeOf(t, sig_);
      if (got != want) {
        Fail(path, FailureReason::kTypeError,
             "semantics has type " + got.str() + " but category " + cat.str() + " requires " + want.str());
      }
      return t;
    } catch (const SyntaxError& e) {
      Fail(path, FailureReason::kSemMismatch, "unreadable semantics: " + std::string(e.what()));
    } catch (const ElabError& e) {
      Fail(path, FailureReason::kTypeError, e.what());
    } catch (const TypeError& e) {
      Fail(path, FailureReason::kTypeError, e.what());
    }
    return std::nullopt;
  }

  void CompareCat(const std::optional<Cat>& computed, const Claim& c, const std::string& path) {
    if (computed && c.cat && *computed != *c.cat) {
      Fail(path, FailureReason::kCatMismatch, "rule yields " + computed->str() + ", recorded " + c.cat->str());
    }
  }

  void CompareSem(const std::optional<Term>& computed, const Claim& c, const std::string& path) {
    if (!computed || !c.sem) return;
    if (!AlphaEq(BetaNormalize(*computed), BetaNormalize(*c.sem))) {
      Fail(path, FailureReason::kSemMismatch,
           "rule yields " + PrintTerm(BetaNormalize(*computed)) + ", recorded " + PrintTerm(*c.sem));
    }
  }

  Claim Node(const json& n, const std::string& path) {
    if (!n.is_object()) Malformed(path, "node must be an object");
    Claim c;
    auto span = Get<std::vector<int>>(n, "span", path + "/span");
    if (span.size() != 2) Malformed(path + "/span", "span must have two endpoints");
    c.start = span[0];
    c.end = span[1];
    if (c.start < 0 || c.end > static_cast<int>(tokens_.size()) || c.start >= c.end) {
      Fail(path, FailureReason::kSpanError, "span [" + std::to_string(c.start) + "," + std::to_string(c.end) +
                                                ") is out of bounds");
    }
    std::vector<std::string> vars;
    if (n.contains("vars")) vars = Get<std::vector<std::string>>(n, "vars", path + "/vars");
    c.cat = ReadCat(Get<std::string>(n, "cat", path + "/cat"), vars, path);
    if (c.cat) c.sem = ReadSem(Get<std::string>(n, "sem", path + "/sem"), *c.cat, vars, path);

    std::string rule_name = Get<std::string>(n, "rule", path + "/rule");
    std::optional<Rule> rule = RuleFromName(rule_name);
    if (!rule) {
      Fail(path, FailureReason::kUnknownRule, "unknown rule '" + rule_name + "'");
      // Still visit the children so their own problems are reported.
      for (const char* k : {"child", "left", "right"}) {
        if (n.contains(k)) Node(n.at(k), path + "/" + k);
      }
      return c;
    }
    if (!ShapeFits(*rule, n)) {
      Fail(path, FailureReason::kUnknownRule, "node fields do not fit rule " + rule_name);
      for (const char* k : {"child", "left", "right"}) {
        if (n.contains(k)) Node(n.at(k), path + "/" + k);
      }
      return c;
    }
    switch (*rule) {
      case Rule::kLex: Lex(n, c, path); break;
      case Rule::kCoord: Coord(n, c, path); break;
      case Rule::kLift: Lift(n, c, path); break;
      default: Binary(*rule, n, c, path); break;
    }
    return c;
  }

  static bool ShapeFits(Rule rule, const json& n) {
    bool leaf = n.contains("token");
    bool lift = n.contains("child");
    bool binary = n.contains("left") && n.contains("right");
    switch (rule) {
      case Rule::kLex: return leaf && (n.contains("entry") || n.contains("numeral")) && !lift && !binary;
      case Rule::kCoord: return leaf && n.contains("op") && !lift && !binary;
      case Rule::kLift: return lift && !leaf && !binary;
      default: return binary && !leaf && !lift;
    }
  }

  void CheckLeafSpan(const json& n, const Claim& c, const std::string& path) {
    std::string token = Get<std::string>(n, "token", path + "/token");
    if (c.end != c.start + 1) {
      Fail(path, FailureReason::kSpanError, "a leaf must cover exactly one token");
    } else if (c.start >= 0 && c.start < static_cast<int>(tokens_.size()) && tokens_[c.start] != token) {
      Fail(path, FailureReason::kSpanError, "token '" + token + "' is not the word at position " +
                                                std::to_string(c.start));
    }
  }

  void Lex(const json& n, const Claim& c, const std::string& path) {
    CheckLeafSpan(n, c, path);
    std::string token = Get<std::string>(n, "token", path + "/token");
    if (n.value("numeral", false)) {
      if (!IsNumeral(token) || !sig_.numeral_type()) {
        Fail(path, FailureReason::kLexMismatch, "'" + token + "' is not a numeral of a declared numeral type");
        return;
      }
      SemType nt = SemType::Base(*sig_.numeral_type());
      CompareCat(Cat::NP(nt), c, path);
      CompareSem(Term::Const(token, nt), c, path);
      return;
    }
    const json& ej = Field(n, "entry", path + "/entry");
    std::string epath = path + "/entry";
    std::string word = Get<std::string>(ej, "word", epath + "/word");
    std::string file = Get<std::string>(ej, "file", epath + "/file");
    int ordinal = Get<int>(ej, "ordinal", epath + "/ordinal");
    auto vars = Get<std::vector<std::string>>(ej, "vars", epath + "/vars");
    std::string cat_text = Get<std::string>(ej, "cat", epath + "/cat");
    std::string sem_text = Get<std::string>(ej, "sem", epath + "/sem");
    if (word != token) Fail(epath, FailureReason::kLexMismatch, "entry is for '" + word + "', not '" + token + "'");
    std::optional<LexEntry> entry;
    try {
      entry = MakeEntry(word, vars, cat_text, sem_text, sig_, lex_ ? &lex_->macros() : nullptr);
    } catch (const LexiconError& e) {
      Fail(epath, FailureReason::kLexMismatch, std::string("inlined entry is invalid: ") + e.what());
      return;
    }
    if (lex_) {
      const LexEntry* live = lex_->Find(file, word, ordinal);
      if (!live) {
        Fail(epath, FailureReason::kLexMismatch,
             "no entry " + file + ":" + word + "#" + std::to_string(ordinal) + " in the lexicon");
      } else if (live->ty_vars != entry->ty_vars || live->cat != entry->cat || !AlphaEq(live->sem, entry->sem)) {
        Fail(epath, FailureReason::kLexMismatch, "lexicon entry " + file + ":" + word + "#" + std::to_string(ordinal) +
                                                     " is now " + live->cat.str() + " : " + PrintTerm(live->sem));
      }
    }
    // The node must be an instance of the entry.
    if (!c.cat || !c.sem) return;
    TypeSubst s;
    if (!UnifyCats(entry->cat, *c.cat, &s) || ApplySubst(s, entry->cat) != *c.cat) {
      Fail(path, FailureReason::kCatMismatch, c.cat->str() + " is not an instance of " + entry->cat.str());
      return;
    }
    CompareSem(ApplySubst(s, entry->sem), c, path);
  }

  void Coord(const json& n, const Claim& c, const std::string& path) {
    CheckLeafSpan(n, c, path);
    std::string token = Get<std::string>(n, "token", path + "/token");
    std::string op_name = Get<std::string>(n, "op", path + "/op");
    auto op = CoordOpFromName(op_name);
    if (!op) {
      Fail(path, FailureReason::kLexMismatch, "unknown coordination '" + op_name + "'");
      return;
    }
    if (lex_) {
      auto it = lex_->coordinators().find(token);
      if (it == lex_->coordinators().end() || it->second != *op) {
        Fail(path, FailureReason::kLexMismatch, "'" + token + "' is not a coordinator for " + op_name);
      }
    }
    if (!c.cat) return;
    if (!c.cat->is(Cat::Kind::kRSlash)) {
      Fail(path, FailureReason::kCatMismatch, "a coordinator has a category of the form (X\\X)/X");
      return;
    }
    auto inst = InstantiateCoordinator(*op, c.cat->arg(), max_lift_);
    if (!inst) {
      Fail(path, FailureReason::kCatMismatch, c.cat->arg().str() + " cannot be coordinated within the lift bound");
      return;
    }
    CompareCat(inst->cat, c, path);
    CompareSem(inst->sem, c, path);
  }

  void Lift(const json& n, const Claim& c, const std::string& path) {
    Claim child = Node(Field(n, "child", path + "/child"), path + "/child");
    if (child.start != c.start || child.end != c.end) Fail(path, FailureReason::kSpanError, "child span differs");
    if (!child.cat) return;
    if (!child.cat->is(Cat::Kind::kADJ)) {
      Fail(path, FailureReason::kCatMismatch, "LIFT applies to adjectives, not " + child.cat->str());
      return;
    }
    CompareCat(AdjectiveLiftCat(*child.cat), c, path);
    if (child.sem) CompareSem(Term::App(AdjectiveLiftSem(child.cat->index()), *child.sem), c, path);
  }

  void Binary(Rule rule, const json& n, const Claim& c, const std::string& path) {
    Claim l = Node(Field(n, "left", path + "/left"), path + "/left");
    Claim r = Node(Field(n, "right", path + "/right"), path + "/right");
    if (l.start != c.start || l.end != r.start || r.end != c.end) {
      Fail(path, FailureReason::kSpanError, "children do not tile the node's span");
    }
    if (!l.cat || !r.cat) return;
    const Cat& lc = *l.cat;
    const Cat& rc = *r.cat;
    std::optional<Cat> cat;
    std::optional<Term> sem;
    bool have_sems = l.sem && r.sem;
    switch (rule) {
      case Rule::kFA:
        if (lc.is(Cat::Kind::kRSlash) && lc.arg() == rc) {
          cat = lc.result();
          if (have_sems) sem = Term::App(*l.sem, *r.sem);
        }
        break;
      case Rule::kBA:
        if (rc.is(Cat::Kind::kLSlash) && rc.arg() == lc) {
          cat = rc.result();
          if (have_sems) sem = Term::App(*r.sem, *l.sem);
        }
        break;
      case Rule::kFC:
        if (lc.is(Cat::Kind::kRSlash) && rc.is(Cat::Kind::kRSlash) && lc.arg() == rc.result()) {
          cat = Cat::RSlash(lc.result(), rc.arg());
          if (have_sems) {
            SemType zt = Interp(rc.arg());
            std::string z = FreshName("z", Names(*l.sem, *r.sem));
            sem = Term::Lam(z, zt, Term::App(*l.sem, Term::App(*r.sem, Term::Var(z, zt))));
          }
        }
        break;
      case Rule::kBC:
        if (lc.is(Cat::Kind::kLSlash) && rc.is(Cat::Kind::kLSlash) && lc.result() == rc.arg()) {
          cat = Cat::LSlash(lc.arg(), rc.result());
          if (have_sems) {
            SemType at = Interp(lc.arg());
            std::string a = FreshName("a", Names(*l.sem, *r.sem));
            sem = Term::Lam(a, at, Term::App(*r.sem, Term::App(*l.sem, Term::Var(a, at))));
          }
        }
        break;
      default: Fail(path, FailureReason::kUnknownRule, "rule is not binary"); return;
    }
    if (!cat) {
      Fail(path, FailureReason::kCatMismatch, std::string(RuleName(rule)) + " does not apply to " + lc.str() + " and " +
                                                  rc.str());
      return;
    }
    CompareCat(cat, c, path);
    CompareSem(sem, c, path);
  }

  static std::set<std::string> Names(const Term& a, const Term& b) {
    std::set<std::string> out = a.FreeVars();
    std::set<std::string> more = b.FreeVars();
    out.insert(more.begin(), more.end());
    return out;
  }

  const json& doc_;
  const Lexicon* lex_;
  Signature sig_;
  std::vector<std::string> tokens_;
  int max_lift_ = 2;
  Verdict verdict_;
};

}  // namespace

Verdict CheckCertificate(const json& doc, const Lexicon* lex) { return Checker(doc, lex).Run(); }

}  // namespace catspec
