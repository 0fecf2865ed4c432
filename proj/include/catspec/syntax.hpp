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


// Textual surface syntax for semantic types and terms, shared by lexicon
// files, corpus files and certificates.
//
//   type  ::= prod ('->' type)?            right associative
//   prod  ::= atom ('*' atom)*             binds tighter than '->'
//   atom  ::= 'Prop' | ident | '(' type ')'
//
//   term  ::= binder | imp
//   binder::= ('\' | 'fun' | 'forall' | 'exists') ident+ (':' type)? ('.' | ',' | '=>') term
//   imp   ::= or ('->' imp)?
//   or    ::= and ('\/' or)?
//   and   ::= not ('/\' and)?
//   not   ::= '~' not | eq
//   eq    ::= app ('=' app)?
//   app   ::= ('fst' | 'snd')? atom atom*
//   atom  ::= ident | numeral | 'true' | 'false' | '(' term ')' | '(' term ',' term ')'

#ifndef CATSPEC_SYNTAX_HPP_
#define CATSPEC_SYNTAX_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catspec/sem.hpp"

namespace catspec {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : std::runtime_error("at column " + std::to_string(offset + 1) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Raised when a term is well-formed text but cannot be given a type.
class ElabError : public std::runtime_error {
 public:
  ElabError(const std::string& message, std::string expected = {}, std::string found = {})
      : std::runtime_error(message), expected_(std::move(expected)), found_(std::move(found)) {}
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_, found_;
};

// Names in ty_vars parse as type variables; other identifiers must be
// declared base types of sig (when sig is non-null).
SemType ParseType(std::string_view text, const Signature* sig, const std::vector<std::string>& ty_vars = {});

// Parses and elaborates a term.  Missing binder annotations are inferred,
// using `expected` as the type of the whole term when given.  The names in
// ty_vars are rigid: they may not be instantiated during elaboration.
Term ParseTerm(std::string_view text, const Signature& sig, const std::vector<std::string>& ty_vars = {},
               const SemType* expected = nullptr);

// Surface rendering with binder annotations; ParseTerm(PrintTerm(t)) is
// alpha-equivalent to t.
std::string PrintTerm(const Term& t);

bool IsKeyword(std::string_view word);

}  // namespace catspec

#endif  // CATSPEC_SYNTAX_HPP_
