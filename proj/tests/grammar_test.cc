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

#include "catspec/grammar.hpp"

#include <gtest/gtest.h>

#include "catspec/syntax.hpp"

namespace catspec {
namespace {

const SemType kNat = SemType::Base("nat");
const SemType kProp = SemType::Truth();

Signature NatSig() {
  Signature sig;
  sig.AddType("nat");
  sig.AddType("list");
  return sig;
}

TEST(CatTest, InterpretsBothSlashesAsFunctions) {
  Cat vp = Cat::LSlash(Cat::NP(kNat), Cat::S());
  EXPECT_EQ(Interp(vp), SemType::Arrow(kNat, kProp));
  Cat tv = Cat::RSlash(vp, Cat::NP(kNat));
  EXPECT_EQ(Interp(tv), SemType::Arrow(kNat, SemType::Arrow(kNat, kProp)));
  EXPECT_EQ(Interp(Cat::Adj(kNat)), SemType::Arrow(kNat, kProp));
  EXPECT_EQ(Interp(Cat::CN(kNat)), SemType::Arrow(kNat, kProp));
  EXPECT_EQ(Interp(Cat::PP("of", kNat)), kNat);
}

TEST(CatTest, PrintsAndParses) {
  Signature sig = NatSig();
  for (const char* text : {"S", "NP<nat>", "(NP<nat>\\S)/ADJ<nat>", "PP[of]<nat -> Prop>", "CN<list>/PP[of]<nat>",
                           "NP<nat -> nat>\\(NP<nat>/NP<nat>)", "(S/(NP<nat>\\S))/CN<nat>"}) {
    Cat c = ParseCat(text, &sig);
    EXPECT_EQ(c.str(), text);
    EXPECT_EQ(ParseCat(c.str(), &sig), c);
  }
}

TEST(CatTest, SlashAssociativity) {
  Signature sig = NatSig();
  EXPECT_EQ(ParseCat("S/NP<nat>/NP<nat>", &sig), ParseCat("(S/NP<nat>)/NP<nat>", &sig));
  EXPECT_EQ(ParseCat("NP<nat>\\NP<nat>\\S", &sig), ParseCat("NP<nat>\\(NP<nat>\\S)", &sig));
  EXPECT_THROW(ParseCat("NP<nat>\\S/NP<nat>", &sig), SyntaxError);
}

TEST(CatTest, RejectsUnknownIndexType) {
  Signature sig = NatSig();
  EXPECT_THROW(ParseCat("NP<tree>", &sig), std::exception);
  EXPECT_NO_THROW(ParseCat("NP<T>", &sig, {"T"}));
}

TEST(CatTest, QuantMacroExpands) {
  Signature sig = NatSig();
  Cat q = ParseCat("Quant<nat>", &sig, {}, &BuiltinMacros());
  EXPECT_EQ(q, ParseCat("(S/(NP<nat>\\S))/CN<nat>", &sig));
}

TEST(CatTest, UnifyInstantiatesIndices) {
  Signature sig = NatSig();
  Cat poly = ParseCat("(NP<T>\\S)/ADJ<T>", &sig, {"T"});
  Cat mono = ParseCat("(NP<nat>\\S)/ADJ<nat>", &sig);
  TypeSubst s;
  ASSERT_TRUE(UnifyCats(poly, mono, &s));
  EXPECT_EQ(ApplySubst(s, poly), mono);
}

TEST(CatTest, UnifyFailsOnShapeOrPreposition) {
  Signature sig = NatSig();
  TypeSubst s;
  EXPECT_FALSE(UnifyCats(ParseCat("PP[of]<nat>", &sig), ParseCat("PP[to]<nat>", &sig), &s));
  EXPECT_FALSE(UnifyCats(ParseCat("S/S", &sig), ParseCat("S\\S", &sig), &s));
  EXPECT_FALSE(UnifyCats(ParseCat("NP<T>", &sig, {"T"}), ParseCat("NP<T -> nat>", &sig, {"T"}), &s));
  EXPECT_TRUE(s.empty());
}

TEST(PropLikeTest, Depths) {
  Signature sig = NatSig();
  auto s = PropLike(Cat::S());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->depth, 0);
  auto vp = PropLike(ParseCat("NP<nat>\\S", &sig));
  ASSERT_TRUE(vp);
  EXPECT_EQ(vp->depth, 1);
  EXPECT_EQ(vp->lifted(), SemType::Arrow(kNat, kProp));
  auto adj = PropLike(Cat::Adj(kNat));
  ASSERT_TRUE(adj);
  EXPECT_EQ(adj->depth, 1);
  EXPECT_FALSE(PropLike(Cat::NP(kNat)));
}

TEST(LiftOpTest, PointwiseConjunction) {
  Signature sig = NatSig();
  sig.AddConstant("even", SemType::Arrow(kNat, kProp));
  sig.AddConstant("odd", SemType::Arrow(kNat, kProp));
  auto spec = PropLike(Cat::Adj(kNat));
  ASSERT_TRUE(spec);
  Term op = LiftOp(Term::Kind::kAnd, *spec);
  SemType pred = SemType::Arrow(kNat, kProp);
  EXPECT_EQ(TypeOf(op, sig), SemType::Arrow(pred, SemType::Arrow(pred, pred)));
  Term applied = BetaNormalize(Term::Apps(op, {Term::Const("even", pred), Term::Const("odd", pred)}));
  EXPECT_TRUE(AlphaEq(applied, ParseTerm("\\n:nat. even n /\\ odd n", sig)));
}

}  // namespace
}  // namespace catspec
