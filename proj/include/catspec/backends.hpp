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

// Proof-assistant renderings of logical forms.
//
// Precedence, loosest first: binders (bodies extend right), ->, \/, /\,
// negation, =, application.  Implication, disjunction and conjunction
// associate to the right.  Adjacent binders of one kind are coalesced.

#ifndef CATSPEC_BACKENDS_HPP_
#define CATSPEC_BACKENDS_HPP_

#include <stdexcept>
#include <string>

#include "catspec/sem.hpp"

namespace catspec {

enum class EmitTarget { kLean4, kCoq, kPlain };

const char* EmitTargetName(EmitTarget t);
// "lean", "lean4", "coq", "plain"; throws std::invalid_argument otherwise.
EmitTarget EmitTargetFromName(const std::string& name);

struct EmitOptions {
  // Annotate binders with their types: forall (a b : nat), ...
  bool typed_binders = false;
  // Lean only: use the Unicode connectives.
  bool unicode = false;
};

// A type variable reached the printer.
class UnprintableType : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string EmitType(const SemType& t, EmitTarget target, const Signature& sig);

// Plain output is the lexicon term syntax and reads back with ParseTerm.
std::string EmitTerm(const Term& t, EmitTarget target, const Signature& sig, const EmitOptions& opts = {});

// Stubs axiomatize every unrendered base type and every constant that t
// mentions, in sorted order.
std::string EmitTheorem(const std::string& name, const Term& t, EmitTarget target, const Signature& sig,
                        bool with_stubs, const EmitOptions& opts = {});

}  // namespace catspec

#endif  // CATSPEC_BACKENDS_HPP_
