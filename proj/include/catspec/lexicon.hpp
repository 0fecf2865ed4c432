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


// The word -> (category, semantics) database.
//
// Lexicon files are TOML documents with the sections [options], [types],
// [constants], [[macro]], [[coordinator]] and [[entry]].  See
// docs/lexicon-format.md for the full grammar.

#ifndef CATSPEC_LEXICON_HPP_
#define CATSPEC_LEXICON_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "catspec/grammar.hpp"
#include "catspec/sem.hpp"

namespace catspec {

struct Provenance {
  std::string file;  // file id: base name of the source path
  int line = 0;
};

struct LexEntry {
  std::string word;
  std::vector<std::string> ty_vars;
  Cat cat;
  Term sem;
  std::string cat_text;  // as written in the file
  std::string sem_text;
  std::string feature;   // empty: always enabled
  Provenance where;
  int ordinal = 0;       // position among the entries for `word` in its file
};

class LexiconError : public std::runtime_error {
 public:
  enum class Kind { kIo, kParse, kLint, kSignature };
  LexiconError(Kind kind, Provenance where, const std::string& message, std::string expected = {},
               std::string found = {});
  Kind kind() const { return kind_; }
  const Provenance& where() const { return where_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  Kind kind_;
  Provenance where_;
  std::string expected_, found_;
};

// Hands out type-variable ids that are unique within one supply.
class FreshSupply {
 public:
  std::string Fresh(const std::string& base);

 private:
  int next_ = 0;
};

class Lexicon {
 public:
  const Signature& signature() const { return sig_; }
  const MacroTable& macros() const { return macros_; }
  const std::map<std::string, Term::Kind>& coordinators() const { return coordinators_; }
  const std::map<std::string, std::vector<LexEntry>>& entries() const { return entries_; }
  const std::vector<std::string>& files() const { return files_; }
  std::set<std::string> features() const;

  bool Knows(const std::string& word) const;
  bool IsCoordinator(const std::string& word) const { return coordinators_.count(word) != 0; }

  // Entries for w whose feature is enabled, with type variables renamed
  // apart using `fresh`.  Unknown words give an empty list.
  std::vector<LexEntry> Lookup(const std::string& w, FreshSupply* fresh,
                               const std::set<std::string>& features = {}) const;
  // Unfreshened entry by certificate reference, or nullptr.
  const LexEntry* Find(const std::string& file, const std::string& word, int ordinal) const;
  // Every word of the lexicon, coordinators included.
  std::vector<std::string> Words() const;

 private:
  friend class LexiconBuilder;
  Signature sig_;
  MacroTable macros_;
  std::map<std::string, Term::Kind> coordinators_;
  std::map<std::string, std::vector<LexEntry>> entries_;
  std::vector<std::string> files_;
};

struct LexiconSource {
  std::string path;  // used for the file id and diagnostics
  std::string text;
};

// Loads and merges lexicon documents.  Throws LexiconError on the first
// problem, or records every problem in *errors and keeps going when errors
// is non-null.
Lexicon LoadLexicon(const std::vector<LexiconSource>& sources, std::vector<LexiconError>* errors = nullptr);
Lexicon LoadLexiconFiles(const std::vector<std::string>& paths, std::vector<LexiconError>* errors = nullptr);

// Re-checks an entry: every type variable is declared, the semantics
// mentions only variables that occur in the category, and the semantics has
// exactly the type interp(cat) with the declared variables held rigid.
void LintEntry(const LexEntry& e, const Signature& sig);

// Builds an entry from its textual parts and lints it.
LexEntry MakeEntry(const std::string& word, const std::vector<std::string>& ty_vars, const std::string& cat_text,
                   const std::string& sem_text, const Signature& sig, const MacroTable* macros = nullptr);

Term RenameTypeVars(const Term& t, const std::map<std::string, std::string>& renaming);
Cat RenameTypeVars(const Cat& c, const std::map<std::string, std::string>& renaming);

struct AuditFlag {
  std::string word;
  LexEntry a, b;
  std::string unified_cat;  // the common instance of both categories
};

// Pairs of entries for the same word whose categories unify once renamed
// apart: each such pair can produce two readings of one sentence.
std::vector<AuditFlag> AmbiguityAudit(const Lexicon& lex);

// Directory holding the shipped lexicons and corpora.
std::string DataDir();
std::vector<std::string> DemoLexiconPaths();

}  // namespace catspec

#endif  // CATSPEC_LEXICON_HPP_
