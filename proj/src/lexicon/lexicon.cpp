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

#include "catspec/lexicon.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "catspec/syntax.hpp"

#ifndef CATSPEC_DATA_DIR
#define CATSPEC_DATA_DIR "data"
#endif

namespace catspec {

LexiconError::LexiconError(Kind kind, Provenance where, const std::string& message, std::string expected,
                           std::string found)
    : std::runtime_error(where.file.empty() ? message
                                            : where.file + (where.line > 0 ? ":" + std::to_string(where.line) : "") +
                                                  ": " + message),
      kind_(kind),
      where_(std::move(where)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string FreshSupply::Fresh(const std::string& base) { return base + "_" + std::to_string(++next_); }

// ---------------------------------------------------------------------------
// Type-variable renaming

namespace {

SemType RenameType(const SemType& t, const std::map<std::string, std::string>& r) {
  switch (t.kind()) {
    case SemType::Kind::kVar: {
      auto it = r.find(t.name());
      return it == r.end() ? t : SemType::Var(it->second);
    }
    case SemType::Kind::kArrow: return SemType::Arrow(RenameType(t.first(), r), RenameType(t.second(), r));
    case SemType::Kind::kProd: return SemType::Prod(RenameType(t.first(), r), RenameType(t.second(), r));
    default: return t;
  }
}

}  // namespace

Term RenameTypeVars(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty() || !t.HasTypeVars()) return t;
  return MapTypes(t, [&](const SemType& ty) { return RenameType(ty, renaming); });
}

Cat RenameTypeVars(const Cat& c, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty() || c.is_ground()) return c;
  return MapIndices(c, [&](const SemType& ty) { return RenameType(ty, renaming); });
}

// ---------------------------------------------------------------------------
// Lexicon queries

std::set<std::string> Lexicon::features() const {
  std::set<std::string> out;
  for (const auto& [word, list] : entries_) {
    for (const auto& e : list) {
      if (!e.feature.empty()) out.insert(e.feature);
    }
  }
  return out;
}

bool Lexicon::Knows(const std::string& word) const {
  return entries_.count(word) != 0 || coordinators_.count(word) != 0;
}

std::vector<LexEntry> Lexicon::Lookup(const std::string& w, FreshSupply* fresh,
                                      const std::set<std::string>& features) const {
  std::vector<LexEntry> out;
  auto it = entries_.find(w);
  if (it == entries_.end()) return out;
  for (const LexEntry& e : it->second) {
    if (!e.feature.empty() && !features.count(e.feature)) continue;
    LexEntry copy = e;
    if (!e.ty_vars.empty()) {
      std::map<std::string, std::string> renaming;
      for (const auto& v : e.ty_vars) renaming[v] = fresh->Fresh(v);
      copy.cat = RenameTypeVars(e.cat, renaming);
      copy.sem = RenameTypeVars(e.sem, renaming);
      copy.ty_vars.clear();
      for (const auto& v : e.ty_vars) copy.ty_vars.push_back(renaming[v]);
    }
    out.push_back(std::move(copy));
  }
  return out;
}

const LexEntry* Lexicon::Find(const std::string& file, const std::string& word, int ordinal) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) return nullptr;
  for (const LexEntry& e : it->second) {
    if (e.where.file == file && e.ordinal == ordinal) return &e;
  }
  return nullptr;
}

std::vector<std::string> Lexicon::Words() const {
  std::set<std::string> words;
  for (const auto& [w, list] : entries_) words.insert(w);
  for (const auto& [w, op] : coordinators_) words.insert(w);
  return {words.begin(), words.end()};
}

// ---------------------------------------------------------------------------
// Linting

void LintEntry(const LexEntry& e, const Signature& sig) {
  std::set<std::string> declared(e.ty_vars.begin(), e.ty_vars.end());
  std::set<std::string> in_cat;
  e.cat.CollectVars(&in_cat);
  for (const auto& v : in_cat) {
    if (!declared.count(v)) {
      throw LexiconError(LexiconError::Kind::kLint, e.where,
                         "entry '" + e.word + "': type variable " + v + " is not declared in vars");
    }
  }
  SemType found;
  try {
    found = TypeOf(e.sem, sig);
  } catch (const TypeError& err) {
    throw LexiconError(LexiconError::Kind::kLint, e.where, "entry '" + e.word + "': " + err.what(), err.expected(),
                       err.found());
  }
  std::set<std::string> in_sem;
  found.CollectVars(&in_sem);
  std::function<void(const Term&)> collect = [&](const Term& t) {
    MapTypes(t, [&](const SemType& ty) {
      ty.CollectVars(&in_sem);
      return ty;
    });
  };
  collect(e.sem);
  for (const auto& v : in_sem) {
    if (!declared.count(v)) {
      throw LexiconError(LexiconError::Kind::kLint, e.where,
                         "entry '" + e.word + "': type variable " + v + " is not declared in vars");
    }
    if (!in_cat.count(v)) {
      throw LexiconError(LexiconError::Kind::kLint, e.where,
                         "entry '" + e.word + "': type variable " + v +
                             " appears in the semantics but not in the category");
    }
  }
  SemType expected = Interp(e.cat);
  if (found != expected) {
    throw LexiconError(LexiconError::Kind::kLint, e.where,
                       "entry '" + e.word + "' has category " + e.cat.str() + " whose semantic type is " +
                           expected.str() + ", but its semantics has type " + found.str(),
                       expected.str(), found.str());
  }
}

LexEntry MakeEntry(const std::string& word, const std::vector<std::string>& ty_vars, const std::string& cat_text,
                   const std::string& sem_text, const Signature& sig, const MacroTable* macros) {
  LexEntry e;
  e.word = word;
  e.ty_vars = ty_vars;
  e.cat_text = cat_text;
  e.sem_text = sem_text;
  try {
    e.cat = ParseCat(cat_text, &sig, ty_vars, macros);
  } catch (const SyntaxError& err) {
    throw LexiconError(LexiconError::Kind::kParse, {}, "entry '" + word + "': category: " + err.what());
  }
  SemType expected = Interp(e.cat);
  try {
    e.sem = ParseTerm(sem_text, sig, ty_vars, &expected);
  } catch (const SyntaxError& err) {
    throw LexiconError(LexiconError::Kind::kParse, {}, "entry '" + word + "': semantics: " + err.what());
  } catch (const ElabError& err) {
    std::string msg = "entry '" + word + "' has category " + e.cat.str();
    if (!err.expected().empty() && err.expected() == expected.str()) {
      msg += " whose semantic type is " + err.expected() + ", but its semantics has type " + err.found();
    } else {
      msg += ": ill-typed semantics: " + std::string(err.what());
    }
    throw LexiconError(LexiconError::Kind::kLint, {}, msg, err.expected(), err.found());
  }
  LintEntry(e, sig);
  return e;
}

// ---------------------------------------------------------------------------
// Loading

class LexiconBuilder {
 public:
  explicit LexiconBuilder(std::vector<LexiconError>* errors) : errors_(errors) {}

  Lexicon Build(const std::vector<LexiconSource>& sources) {
    std::vector<Doc> docs;
    for (const auto& src : sources) {
      Doc d;
      d.id = std::filesystem::path(src.path).filename().string();
      d.path = src.path;
      try {
        d.table = toml::parse(src.text, src.path);
      } catch (const toml::parse_error& err) {
        Report(LexiconError(LexiconError::Kind::kParse, {d.id, static_cast<int>(err.source().begin.line)},
                            std::string(err.description())));
        continue;
      }
      lex_.files_.push_back(d.id);
      docs.push_back(std::move(d));
    }
    // Declarations from every file come first so that entries may refer to
    // types and constants declared in any of them, whatever the file order.
    for (auto& d : docs) Options(d);
    for (auto& d : docs) Types(d);
    for (auto& d : docs) Constants(d);
    for (auto& d : docs) Macros(d);
    for (auto& d : docs) Coordinators(d);
    for (auto& d : docs) Entries(d);
    return std::move(lex_);
  }

 private:
  struct Doc {
    std::string id, path;
    toml::table table;
  };

  void Report(LexiconError err) {
    if (!errors_) throw err;
    errors_->push_back(std::move(err));
  }

  static int Line(const toml::node& n) { return static_cast<int>(n.source().begin.line); }

  void Fail(const Doc& d, const toml::node& at, const std::string& msg,
            LexiconError::Kind kind = LexiconError::Kind::kParse) {
    Report(LexiconError(kind, {d.id, Line(at)}, msg));
  }

  std::optional<std::string> String(const Doc& d, const toml::table& t, const char* key, bool required) {
    const toml::node* n = t.get(key);
    if (!n) {
      if (required) Fail(d, t, std::string("missing key '") + key + "'");
      return std::nullopt;
    }
    if (auto s = n->value<std::string>()) return s;
    Fail(d, *n, std::string("key '") + key + "' must be a string");
    return std::nullopt;
  }

  std::optional<std::vector<std::string>> Strings(const Doc& d, const toml::table& t, const char* key) {
    const toml::node* n = t.get(key);
    if (!n) return std::vector<std::string>{};
    const toml::array* arr = n->as_array();
    if (!arr) {
      Fail(d, *n, std::string("key '") + key + "' must be an array of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (const auto& el : *arr) {
      auto s = el.value<std::string>();
      if (!s) {
        Fail(d, el, std::string("key '") + key + "' must be an array of strings");
        return std::nullopt;
      }
      out.push_back(*s);
    }
    return out;
  }

  bool OnlyKeys(const Doc& d, const toml::table& t, std::initializer_list<const char*> allowed) {
    for (auto&& [k, v] : t) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k.str() == a;
      if (!ok) {
        Fail(d, v, "unknown key '" + std::string(k.str()) + "'");
        return false;
      }
    }
    return true;
  }

  const toml::array* TableArray(const Doc& d, const char* key) {
    const toml::node* n = d.table.get(key);
    if (!n) return nullptr;
    const toml::array* arr = n->as_array();
    if (!arr || !arr->is_array_of_tables()) {
      Fail(d, *n, std::string("'") + key + "' must be written as [[" + key + "]] tables");
      return nullptr;
    }
    return arr;
  }

  void Options(const Doc& d) {
    const toml::table* t = d.table["options"].as_table();
    if (!t) return;
    if (!OnlyKeys(d, *t, {"numeral_type"})) return;
    if (auto nt = String(d, *t, "numeral_type", false)) {
      try {
        lex_.sig_.SetNumeralType(*nt);
      } catch (const SignatureConflict& err) {
        Fail(d, *t, err.what(), LexiconError::Kind::kSignature);
      }
    }
  }

  void Types(const Doc& d) {
    const toml::table* t = d.table["types"].as_table();
    if (!t) return;
    for (auto&& [k, v] : *t) {
      TypeRendering r;
      if (const toml::table* rt = v.as_table()) {
        if (!OnlyKeys(d, *rt, {"lean", "coq"})) continue;
        r.lean = rt->get("lean") ? rt->get("lean")->value_or(std::string()) : "";
        r.coq = rt->get("coq") ? rt->get("coq")->value_or(std::string()) : "";
      } else if (!v.is_boolean()) {
        Fail(d, v, "type '" + std::string(k.str()) + "' must map to a table {lean = ..., coq = ...} or true");
        continue;
      }
      std::string name(k.str());
      if (name == "Prop" || IsKeyword(name)) {
        Fail(d, v, "'" + name + "' cannot be declared as a base type");
        continue;
      }
      lex_.sig_.AddType(name, r);
    }
    if (auto nt = lex_.sig_.numeral_type(); nt && !lex_.sig_.HasType(*nt)) {
      // Checked again once every file has declared its types.
      pending_numeral_check_ = true;
    }
  }

  void Constants(const Doc& d) {
    if (pending_numeral_check_) {
      pending_numeral_check_ = false;
      if (auto nt = lex_.sig_.numeral_type(); nt && !lex_.sig_.HasType(*nt)) {
        Report(LexiconError(LexiconError::Kind::kSignature, {d.id, 0}, "numeral type '" + *nt + "' is not declared"));
      }
    }
    const toml::table* t = d.table["constants"].as_table();
    if (!t) return;
    for (auto&& [k, v] : *t) {
      auto text = v.value<std::string>();
      if (!text) {
        Fail(d, v, "constant '" + std::string(k.str()) + "' must map to a type string");
        continue;
      }
      std::string name(k.str());
      if (IsKeyword(name) || IsNumeral(name)) {
        Fail(d, v, "'" + name + "' cannot be declared as a constant");
        continue;
      }
      try {
        lex_.sig_.AddConstant(name, ParseType(*text, &lex_.sig_));
      } catch (const SyntaxError& err) {
        Fail(d, v, "constant '" + name + "': " + err.what());
      } catch (const SignatureConflict& err) {
        Fail(d, v, err.what(), LexiconError::Kind::kSignature);
      }
    }
  }

  void Macros(const Doc& d) {
    const toml::array* arr = TableArray(d, "macro");
    if (!arr) return;
    for (const auto& el : *arr) {
      const toml::table& t = *el.as_table();
      if (!OnlyKeys(d, t, {"name", "params", "cat"})) continue;
      auto name = String(d, t, "name", true);
      auto params = Strings(d, t, "params");
      auto cat = String(d, t, "cat", true);
      if (!name || !params || !cat) continue;
      try {
        lex_.macros_[*name] = CatMacro{*params, ParseCat(*cat, &lex_.sig_, *params, &lex_.macros_)};
      } catch (const SyntaxError& err) {
        Fail(d, t, "macro '" + *name + "': " + err.what());
      }
    }
  }

  void Coordinators(const Doc& d) {
    const toml::array* arr = TableArray(d, "coordinator");
    if (!arr) return;
    for (const auto& el : *arr) {
      const toml::table& t = *el.as_table();
      if (!OnlyKeys(d, t, {"word", "op"})) continue;
      auto word = String(d, t, "word", true);
      auto op = String(d, t, "op", true);
      if (!word || !op) continue;
      Term::Kind kind;
      if (*op == "and") {
        kind = Term::Kind::kAnd;
      } else if (*op == "or") {
        kind = Term::Kind::kOr;
      } else if (*op == "implies") {
        kind = Term::Kind::kImplies;
      } else {
        Fail(d, t, "coordinator op must be one of and, or, implies");
        continue;
      }
      auto [it, inserted] = lex_.coordinators_.emplace(*word, kind);
      if (!inserted && it->second != kind) {
        Fail(d, t, "coordinator '" + *word + "' declared with two different operations",
             LexiconError::Kind::kSignature);
      }
    }
  }

  void Entries(const Doc& d) {
    const toml::array* arr = TableArray(d, "entry");
    if (!arr) return;
    std::map<std::string, int> ordinals;
    for (const auto& el : *arr) {
      const toml::table& t = *el.as_table();
      if (!OnlyKeys(d, t, {"word", "words", "vars", "cat", "sem", "feature", "note"})) continue;
      std::vector<std::string> words;
      if (t.get("word")) {
        if (auto w = String(d, t, "word", true)) words.push_back(*w);
      } else if (auto ws = Strings(d, t, "words")) {
        words = *ws;
      }
      if (words.empty()) {
        Fail(d, t, "entry needs 'word' or 'words'");
        continue;
      }
      auto vars = Strings(d, t, "vars");
      auto cat = String(d, t, "cat", true);
      auto sem = String(d, t, "sem", true);
      auto feature = String(d, t, "feature", false);
      if (!vars || !cat || !sem) continue;
      LexEntry base;
      try {
        base = MakeEntry(words[0], *vars, *cat, *sem, lex_.sig_, &lex_.macros_);
      } catch (const LexiconError& err) {
        Report(LexiconError(err.kind(), {d.id, Line(t)}, err.what(), err.expected(), err.found()));
        continue;
      }
      for (const auto& w : words) {
        if (w.empty() || w.find_first_of(" \t\n") != std::string::npos) {
          Fail(d, t, "entry word '" + w + "' must be a single token");
          continue;
        }
        LexEntry e = base;
        e.word = w;
        e.feature = feature.value_or("");
        e.where = {d.id, Line(t)};
        e.ordinal = ordinals[w]++;
        lex_.entries_[w].push_back(std::move(e));
      }
    }
  }

  std::vector<LexiconError>* errors_;
  Lexicon lex_;
  bool pending_numeral_check_ = false;
};

Lexicon LoadLexicon(const std::vector<LexiconSource>& sources, std::vector<LexiconError>* errors) {
  return LexiconBuilder(errors).Build(sources);
}

Lexicon LoadLexiconFiles(const std::vector<std::string>& paths, std::vector<LexiconError>* errors) {
  std::vector<LexiconSource> sources;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      LexiconError err(LexiconError::Kind::kIo, {p, 0}, "cannot read lexicon file");
      if (!errors) throw err;
      errors->push_back(err);
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    sources.push_back({p, buf.str()});
  }
  return LoadLexicon(sources, errors);
}

// ---------------------------------------------------------------------------
// Audit

std::vector<AuditFlag> AmbiguityAudit(const Lexicon& lex) {
  std::vector<AuditFlag> out;
  for (const auto& [word, list] : lex.entries()) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        FreshSupply fresh;
        auto rename = [&fresh](const LexEntry& e) {
          std::map<std::string, std::string> r;
          for (const auto& v : e.ty_vars) r[v] = fresh.Fresh(v);
          return RenameTypeVars(e.cat, r);
        };
        Cat a = rename(list[i]);
        Cat b = rename(list[j]);
        TypeSubst s;
        if (UnifyCats(a, b, &s)) out.push_back({word, list[i], list[j], ApplySubst(s, a).str()});
      }
    }
  }
  return out;
}

std::string DataDir() {
  if (const char* env = std::getenv("CATSPEC_DATA_DIR"); env && *env) return env;
  return CATSPEC_DATA_DIR;
}

std::vector<std::string> DemoLexiconPaths() {
  std::string dir = DataDir() + "/lexicon/";
  return {dir + "core.toml", dir + "vfa.toml"};
}

}  // namespace catspec
