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

#include "catspec/sem.hpp"

#include <gtest/gtest.h>

#include "catspec/syntax.hpp"
#include "support.hpp"

namespace catspec {
namespace {

using testing::TermGen;

Signature TestSig() {
  Signature sig;
  sig.AddType("nat");
  sig.AddType("list");
  sig.SetNumeralType("nat");
  sig.AddConstant("even", ParseType("nat -> Prop", &sig));
  sig.AddConstant("le", ParseType("nat -> nat -> Prop", &sig));
  sig.AddConstant("succ", ParseType("nat -> nat", &sig));
  sig.AddConstant("nil", ParseType("list", &sig));
  sig.AddConstant("cons", ParseType("nat -> list -> list", &sig));
  sig.AddConstant("sorted", ParseType("list -> Prop", &sig));
  sig.AddConstant("sort", ParseType("list -> list", &sig));
  return sig;
}

const SemType kNat = SemType::Base("nat");
const SemType kProp = SemType::Truth();

Term P(const std::string& text, const Signature& sig) { return ParseTerm(text, sig, {}, &kProp); }

TEST(SemTypeTest, PrintsArrowsRightNested) {
  SemType t = SemType::Arrow(SemType::Arrow(kNat, kProp), SemType::Arrow(kNat, kProp));
  EXPECT_EQ(t.str(), "(nat -> Prop) -> nat -> Prop");
  EXPECT_EQ(SemType::Prod(kNat, SemType::Base("list")).str(), "nat * list");
  Signature sig = TestSig();
  EXPECT_EQ(ParseType(t.str(), &sig), t);
}

TEST(SemTypeTest, UnknownBaseTypeIsRejected) {
  Signature sig = TestSig();
  EXPECT_THROW(ParseType("tree -> Prop", &sig), std::exception);
  EXPECT_TRUE(ParseType("A -> Prop", &sig, {"A"}).mentions("A"));
}

TEST(TypeOfTest, Constants) {
  Signature sig = TestSig();
  EXPECT_EQ(TypeOf(Term::Const("4", kNat), sig), kNat);
  Term t = Term::App(Term::Const("even", SemType::Arrow(kNat, kProp)), Term::Const("4", kNat));
  EXPECT_EQ(TypeOf(t, sig), kProp);
}

TEST(TypeOfTest, ReportsFailingSubterm) {
  Signature sig = TestSig();
  Term bad = Term::App(Term::Const("even", SemType::Arrow(kNat, kProp)), Term::Const("nil", SemType::Base("list")));
  try {
    TypeOf(bad, sig);
    FAIL() << "expected a type error";
  } catch (const TypeError& e) {
    EXPECT_EQ(e.expected(), "nat");
    EXPECT_EQ(e.found(), "list");
  }
}

TEST(TypeOfTest, FreeVariablesUseTheirAnnotation) {
  Signature sig = TestSig();
  EXPECT_EQ(TypeOf(Term::Var("x", kNat), sig), kNat);
}

TEST(TypeOfTest, ConstantTypeMustMatchSignature) {
  Signature sig = TestSig();
  EXPECT_THROW(TypeOf(Term::Const("even", kProp), sig), TypeError);
}

TEST(NormalizeTest, BetaReducesUnderBinders) {
  Signature sig = TestSig();
  Term t = P("forall n:nat. (\\p:nat -> Prop. \\m:nat. p m) even n", sig);
  EXPECT_TRUE(AlphaEq(BetaNormalize(t), P("forall k:nat. even k", sig)));
}

TEST(NormalizeTest, SubstitutionAvoidsCapture) {
  Signature sig = TestSig();
  // (\x. \y. le x y) y  must not capture the free y.
  Term inner = ParseTerm("\\x:nat. \\y:nat. le x y", sig);
  Term y = Term::Var("y", kNat);
  Term r = BetaNormalize(Term::App(inner, y));
  ASSERT_TRUE(r.is(Term::Kind::kLam));
  EXPECT_NE(r.name(), "y");
  EXPECT_TRUE(r.HasFreeVar("y"));
}

TEST(NormalizeTest, PairProjections) {
  Signature sig = TestSig();
  Term t = P("le (fst (3, 4)) (snd (3, 4))", sig);
  EXPECT_TRUE(AlphaEq(BetaNormalize(t), P("le 3 4", sig)));
}

TEST(NormalizeTest, SimplifyDropsTrivialGuards) {
  Signature sig = TestSig();
  EXPECT_TRUE(AlphaEq(Simplify(P("forall n:nat. true -> even n", sig)), P("forall n:nat. even n", sig)));
  EXPECT_TRUE(AlphaEq(Simplify(P("exists n:nat. true /\\ even n", sig)), P("exists n:nat. even n", sig)));
  EXPECT_TRUE(AlphaEq(Simplify(P("even 2 /\\ true", sig)), P("even 2", sig)));
  // Other literals are left alone.
  EXPECT_TRUE(AlphaEq(Simplify(P("false -> even 2", sig)), P("false -> even 2", sig)));
}

TEST(NormalizeTest, EtaReduce) {
  Signature sig = TestSig();
  Term t = ParseTerm("\\n:nat. even n", sig);
  EXPECT_TRUE(AlphaEq(EtaReduce(t), Term::Const("even", SemType::Arrow(kNat, kProp))));
  Term kept = ParseTerm("\\n:nat. le n n", sig);
  EXPECT_TRUE(AlphaEq(EtaReduce(kept), kept));
}

TEST(AlphaEqTest, BinderNamesAreFree) {
  Signature sig = TestSig();
  EXPECT_TRUE(AlphaEq(P("forall a l. sorted l -> sorted (cons a l)", sig),
                      P("forall x:nat. forall y:list. sorted y -> sorted (cons x y)", sig)));
  EXPECT_FALSE(AlphaEq(P("forall a b:nat. le a b", sig), P("forall a b:nat. le b a", sig)));
  EXPECT_FALSE(AlphaEq(P("forall a:nat. even a", sig), P("exists a:nat. even a", sig)));
}

TEST(AlphaEqTest, BinderTypesMatter) {
  Term a = Term::ForAll("x", kNat, Term::Lit(true));
  Term b = Term::ForAll("x", SemType::Base("list"), Term::Lit(true));
  EXPECT_FALSE(AlphaEq(a, b));
}

TEST(UnifyTest, MostGeneralUnifier) {
  TypeSubst s;
  SemType a = SemType::Arrow(SemType::Var("A"), SemType::Var("B"));
  SemType b = SemType::Arrow(kNat, SemType::Var("A"));
  ASSERT_TRUE(Unify(a, b, &s));
  EXPECT_EQ(s.Apply(a), SemType::Arrow(kNat, kNat));
  EXPECT_EQ(s.Apply(b), SemType::Arrow(kNat, kNat));
}

TEST(UnifyTest, OccursCheck) {
  TypeSubst s;
  UnifyError why;
  EXPECT_FALSE(Unify(SemType::Var("A"), SemType::Arrow(SemType::Var("A"), kProp), &s, &why));
  EXPECT_EQ(why.kind, UnifyError::Kind::kOccursCheck);
  EXPECT_TRUE(s.empty());
}

TEST(UnifyTest, ClashLeavesSubstitutionUntouched) {
  TypeSubst s;
  s.Bind("C", kProp);
  UnifyError why;
  EXPECT_FALSE(Unify(SemType::Arrow(SemType::Var("A"), kNat), SemType::Arrow(kNat, kProp), &s, &why));
  EXPECT_EQ(why.kind, UnifyError::Kind::kClash);
  EXPECT_EQ(s.size(), 1u);
}

TEST(UnifyTest, ThenComposes) {
  TypeSubst first, later;
  first.Bind("A", SemType::Arrow(SemType::Var("B"), kProp));
  later.Bind("B", kNat);
  TypeSubst both = first.Then(later);
  SemType t = SemType::Var("A");
  EXPECT_EQ(both.Apply(t), later.Apply(first.Apply(t)));
}

TEST(SyntaxTest, ElaborationInfersBinderTypes) {
  Signature sig = TestSig();
  Term t = P("forall a l. sorted l -> sorted (cons a l)", sig);
  ASSERT_TRUE(t.is(Term::Kind::kForAll));
  EXPECT_EQ(t.type(), kNat);
  EXPECT_EQ(t.body().type(), SemType::Base("list"));
}

TEST(SyntaxTest, UninferableBinderIsAnError) {
  Signature sig = TestSig();
  EXPECT_THROW(P("forall x. true", sig), ElabError);
}

TEST(SyntaxTest, ExpectedTypeMismatchNamesBoth) {
  Signature sig = TestSig();
  SemType want = SemType::Arrow(kProp, kProp);
  try {
    ParseTerm("\\x:nat. even x", sig, {}, &want);
    FAIL();
  } catch (const ElabError& e) {
    EXPECT_EQ(e.expected(), "Prop -> Prop");
    EXPECT_EQ(e.found(), "nat -> Prop");
  }
}

TEST(SyntaxTest, RejectsMalformedText) {
  Signature sig = TestSig();
  EXPECT_THROW(P("forall . even", sig), SyntaxError);
  EXPECT_THROW(P("even (2", sig), SyntaxError);
  EXPECT_THROW(P("zork 2", sig), ElabError);
}

TEST(SyntaxTest, PrinterPrecedence) {
  Signature sig = TestSig();
  EXPECT_EQ(PrintTerm(P("(even 1 -> even 2) -> even 3", sig)), "(even 1 -> even 2) -> even 3");
  EXPECT_EQ(PrintTerm(P("even 1 -> even 2 -> even 3", sig)), "even 1 -> even 2 -> even 3");
  EXPECT_EQ(PrintTerm(P("even 1 \\/ even 2 /\\ even 3", sig)), "even 1 \\/ even 2 /\\ even 3");
  EXPECT_EQ(PrintTerm(P("(even 1 \\/ even 2) /\\ even 3", sig)), "(even 1 \\/ even 2) /\\ even 3");
  EXPECT_EQ(PrintTerm(P("~ (succ 1 = 2)", sig)), "~ succ 1 = 2");
  EXPECT_EQ(PrintTerm(P("forall a b c:nat. le a (succ b) /\\ le b c", sig)),
            "forall a b c:nat. le a (succ b) /\\ le b c");
}

TEST(SyntaxTest, PrinterRenamesBindersShadowingConstants) {
  Signature sig = TestSig();
  Term t = Term::ForAll("even", kNat, Term::App(Term::Const("even", SemType::Arrow(kNat, kProp)),
                                                 Term::Var("even", kNat)));
  Term back = P(PrintTerm(t), sig);
  EXPECT_TRUE(AlphaEq(back, t));
}

// ---------------------------------------------------------------------------
// Properties over random well-typed terms.

class RandomTermTest : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(RandomTermTest, NormalizationProperties) {
  Signature sig = TestSig();
  TermGen gen(sig, GetParam());
  for (int i = 0; i < 40; ++i) {
    Term t = gen.Gen(kProp, 1 + static_cast<int>(gen.rng()() % 5));
    ASSERT_EQ(TypeOf(t, sig), kProp) << PrintTerm(t);
    Term inner = BetaNormalize(t, Strategy::kInnermost);
    Term outer = BetaNormalize(t, Strategy::kLeftmostOutermost);
    // Type preservation and confluence.
    EXPECT_EQ(TypeOf(inner, sig), kProp);
    EXPECT_TRUE(AlphaEq(inner, outer)) << PrintTerm(t);
    // Idempotence.
    EXPECT_TRUE(AlphaEq(BetaNormalize(inner), inner));
    Term simp = Simplify(inner);
    EXPECT_TRUE(AlphaEq(Simplify(simp), simp));
    EXPECT_EQ(TypeOf(simp, sig), kProp);
    // Printing reads back.
    EXPECT_TRUE(AlphaEq(P(PrintTerm(t), sig), t)) << PrintTerm(t);
    // Alpha-equivalence is reflexive under renaming of every binder.
    EXPECT_TRUE(AlphaEq(t, t));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomTermTest, ::testing::Values(1u, 2u, 3u, 17u, 99u, 2026u));

}  // namespace
}  // namespace catspec
