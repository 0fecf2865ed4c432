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

#include "catspec/derivation.hpp"

#include <sstream>

#include "catspec/syntax.hpp"

namespace catspec {

namespace {

struct RuleNameRow {
  Rule rule;
  const char* name;
};

constexpr RuleNameRow kRuleNames[] = {
    {Rule::kLex, "LEX"}, {Rule::kFA, "FA"},     {Rule::kBA, "BA"},      {Rule::kFC, "FC"},
    {Rule::kBC, "BC"},   {Rule::kLift, "LIFT"}, {Rule::kCoord, "COORD"},
};

}  // namespace

const char* RuleName(Rule r) {
  for (const auto& row : kRuleNames) {
    if (row.rule == r) return row.name;
  }
  return "?";
}

std::optional<Rule> RuleFromName(const std::string& name) {
  for (const auto& row : kRuleNames) {
    if (name == row.name) return row.rule;
  }
  return std::nullopt;
}

bool IsLeafRule(Rule r) { return r == Rule::kLex || r == Rule::kCoord; }

Term AdjectiveLiftSem(const SemType& index) {
  SemType pred = SemType::Arrow(index, SemType::Truth());
  Term p = Term::Var("p", pred);
  Term n = Term::Var("n", pred);
  Term v = Term::Var("v", index);
  return Term::Lam("p", pred,
                   Term::Lam("n", pred, Term::Lam("v", index, Term::And(Term::App(n, v), Term::App(p, v)))));
}

Cat AdjectiveLiftCat(const Cat& adj) { return Cat::RSlash(Cat::CN(adj.index()), Cat::CN(adj.index())); }

std::optional<Coordination> InstantiateCoordinator(Term::Kind op, const Cat& x, int max_lift) {
  auto spec = PropLike(x);
  if (!spec || spec->depth > max_lift) return std::nullopt;
  // liftOp takes the left conjunct first; the category takes the right one
  // first, so the arguments are swapped.
  SemType a = spec->lifted();
  Term r = Term::Var("r", a);
  Term l = Term::Var("l", a);
  Term sem = Term::Lam("r", a, Term::Lam("l", a, Term::Apps(LiftOp(op, *spec), {l, r})));
  return Coordination{Cat::RSlash(Cat::LSlash(x, x), x), BetaNormalize(sem)};
}

const char* CoordOpName(Term::Kind op) {
  switch (op) {
    case Term::Kind::kAnd: return "and";
    case Term::Kind::kOr: return "or";
    case Term::Kind::kImplies: return "implies";
    default: return "?";
  }
}

std::optional<Term::Kind> CoordOpFromName(const std::string& name) {
  if (name == "and") return Term::Kind::kAnd;
  if (name == "or") return Term::Kind::kOr;
  if (name == "implies") return Term::Kind::kImplies;
  return std::nullopt;
}

int DerivNode::leaf_count() const {
  if (kids.empty()) return 1;
  int n = 0;
  for (const auto& k : kids) n += k->leaf_count();
  return n;
}

int DerivNode::node_count() const {
  int n = 1;
  for (const auto& k : kids) n += k->node_count();
  return n;
}

Term Derivation::result() const { return Simplify(BetaNormalize(root->sem)); }

namespace {

void Render(const DerivNode& n, int depth, std::ostringstream* out) {
  for (const auto& k : n.kids) Render(*k, depth + 1, out);
  *out << std::string(2 * depth, ' ') << RuleName(n.rule) << " [" << n.start << "," << n.end << ") ";
  if (n.kids.empty()) *out << '"' << n.token << "\" ";
  *out << n.cat.str() << " : " << PrintTerm(n.sem) << '\n';
}

}  // namespace

std::string RenderDerivation(const Derivation& d) {
  std::ostringstream out;
  Render(*d.root, 0, &out);
  return out.str();
}

}  // namespace catspec
