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

#include <gtest/gtest.h>

#include "catspec/parser.hpp"
#include "catspec/syntax.hpp"
#include "support.hpp"

namespace catspec {
namespace {

using nlohmann::json;
using testing::DemoLexicon;

json CertFor(const std::string& sentence, const Lexicon& lex = DemoLexicon(), std::set<std::string> features = {}) {
  ParseOptions o;
  o.features = features;
  ParseResult r = Parse(sentence, lex, o);
  CertificateMeta meta{"catspec test", o.limits.max_lift, o.limits.fuel, o.limits.max_entries_per_word, features};
  return EmitCertificate(r.derivations.at(r.classes.at(0).derivations.at(0)), lex.signature(), meta);
}

Verdict Live(const json& doc) { return CheckCertificate(doc, &DemoLexicon()); }
Verdict Standalone(const json& doc) { return CheckCertificate(doc, nullptr); }

TEST(EmitTest, FourIsEven) {
  json c = CertFor("four is even");
  EXPECT_EQ(c["format_version"], kCertificateFormatVersion);
  EXPECT_EQ(c["tokens"], json({"four", "is", "even"}));
  EXPECT_EQ(c["result"], "even 4");
  const json& d = c["derivation"];
  EXPECT_EQ(d["rule"], "BA");
  EXPECT_EQ(d["cat"], "S");
  EXPECT_EQ(d["left"]["rule"], "LEX");
  EXPECT_EQ(d["right"]["rule"], "FA");
  EXPECT_EQ(d["right"]["left"]["entry"]["word"], "is");
  EXPECT_EQ(d["right"]["left"]["entry"]["file"], "core.toml");
  EXPECT_EQ(c["limits"]["fuel"], 1000000);
  EXPECT_TRUE(c["signature"]["constants"].contains("even"));
  EXPECT_FALSE(c["signature"]["constants"].contains("sort"));
}

TEST(EmitTest, SingleLeafCertificate) {
  Lexicon lex = LoadLexicon({{"one.toml", "[[entry]]\nword = \"yes\"\ncat = \"S\"\nsem = \"true\"\n"}});
  json c = CertFor("yes", lex);
  EXPECT_EQ(c["derivation"]["rule"], "LEX");
  EXPECT_FALSE(c["derivation"].contains("left"));
  EXPECT_TRUE(Standalone(c).accepted());
  EXPECT_TRUE(CheckCertificate(c, &lex).accepted());
}

TEST(EmitTest, UnionAssociativeResult) {
  json c = CertFor("union is associative");
  Term r = ParseTerm(c["result"].get<std::string>(), DemoLexicon().signature());
  EXPECT_TRUE(AlphaEq(r, testing::Prop("forall a b c. union a (union b c) = union (union a b) c")));
}

TEST(EmitTest, SerializationIsCanonical) {
  json c = CertFor("every odd natural is even");
  std::string a = SerializeCertificate(c);
  std::string b = SerializeCertificate(ParseCertificateText(a));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, SerializeCertificate(CertFor("every odd natural is even")));
  EXPECT_EQ(a.back(), '\n');
  // No floating point anywhere.
  std::function<void(const json&)> walk = [&](const json& j) {
    EXPECT_FALSE(j.is_number_float());
    if (j.is_structured()) {
      for (const auto& k : j) walk(k);
    }
  };
  walk(c);
}

TEST(CheckTest, RoundTripOnShippedCorpora) {
  for (const char* name : {"vfa.toml", "worked_examples.toml"}) {
    for (const auto& c : testing::ShippedCorpus(name).cases) {
      if (c.mode != ExpectMode::kAlphaEq) continue;
      json cert = CertFor(c.sentence, DemoLexicon(), c.features);
      Verdict live = Live(cert);
      Verdict alone = Standalone(cert);
      EXPECT_TRUE(live.accepted()) << c.id << ": " << live.failures.front().detail;
      EXPECT_TRUE(alone.accepted()) << c.id << ": " << alone.failures.front().detail;
    }
  }
}

TEST(CheckTest, RuleRenameIsCatMismatch) {
  json c = CertFor("four is even");
  c["derivation"]["right"]["rule"] = "BA";
  Verdict v = Live(c);
  ASSERT_FALSE(v.accepted());
  EXPECT_TRUE(v.Has(FailureReason::kCatMismatch));
  EXPECT_EQ(v.failures[0].path, "/derivation/right");
}

TEST(CheckTest, UnknownRule) {
  json c = CertFor("four is even");
  c["derivation"]["rule"] = "GUESS";
  Verdict v = Live(c);
  EXPECT_TRUE(v.Has(FailureReason::kUnknownRule));
}

TEST(CheckTest, EditedRootSemantics) {
  json c = CertFor("union is commutative");
  c["result"] = "forall a b:multiset. union a b = union a b";
  Verdict v = Live(c);
  ASSERT_FALSE(v.accepted());
  EXPECT_TRUE(v.Has(FailureReason::kSemMismatch));
}

TEST(CheckTest, RedefinedEntryInStandaloneMode) {
  // The inlined entry for "monotone" now means "always true", but the node
  // still records the original meaning.
  json c = CertFor("addone is monotone");
  bool found = false;
  std::function<void(json&)> walk = [&](json& n) {
    if (n.contains("entry") && n["entry"]["word"] == "monotone") {
      n["entry"]["sem"] = "\\f:nat -> nat. true";
      found = true;
    }
    for (const char* k : {"child", "left", "right"}) {
      if (n.contains(k)) walk(n[k]);
    }
  };
  walk(c["derivation"]);
  ASSERT_TRUE(found);
  Verdict v = Standalone(c);
  ASSERT_FALSE(v.accepted());
  EXPECT_TRUE(v.Has(FailureReason::kSemMismatch));
}

TEST(CheckTest, LexiconDriftInLiveMode) {
  json c = CertFor("addone is monotone");
  std::string core = testing::ReadFile(DataDir() + "/lexicon/core.toml");
  std::string vfa = testing::ReadFile(DataDir() + "/lexicon/vfa.toml");
  std::size_t at = core.find("le (f x) (f y)");
  ASSERT_NE(at, std::string::npos);
  std::string drifted = core;
  drifted.replace(at, std::string("le (f x) (f y)").size(), "true");
  Lexicon lex = LoadLexicon({{"core.toml", drifted}, {"vfa.toml", vfa}});
  Verdict v = CheckCertificate(c, &lex);
  ASSERT_FALSE(v.accepted());
  EXPECT_TRUE(v.Has(FailureReason::kLexMismatch));
  // The certificate is internally consistent.
  EXPECT_TRUE(Standalone(c).accepted());
}

TEST(CheckTest, SpansMustTile) {
  json c = CertFor("four is even");
  c["derivation"]["right"]["span"] = json::array({2, 3});
  Verdict v = Live(c);
  EXPECT_TRUE(v.Has(FailureReason::kSpanError));
}

TEST(CheckTest, RootMustBeASentence) {
  json c = CertFor("four is even");
  json sub = c["derivation"]["right"];
  c["derivation"] = sub;
  c["tokens"] = json::array({"is", "even"});
  Verdict v = Live(c);
  EXPECT_FALSE(v.accepted());
}

TEST(CheckTest, IllTypedNodeIsTypeError) {
  json c = CertFor("four is even");
  c["derivation"]["right"]["right"]["sem"] = "addone";
  Verdict v = Live(c);
  EXPECT_TRUE(v.Has(FailureReason::kTypeError));
}

TEST(CheckTest, ReportsEveryFailure) {
  json c = CertFor("four is even");
  c["derivation"]["right"]["rule"] = "BA";
  c["derivation"]["left"]["span"] = json::array({0, 2});
  Verdict v = Live(c);
  EXPECT_GE(v.failures.size(), 2u);
}

TEST(CheckTest, MalformedDocuments) {
  EXPECT_THROW(ParseCertificateText("{not json"), CertificateFormatError);
  EXPECT_THROW(Live(json::array()), CertificateFormatError);
  json c = CertFor("four is even");
  c["format_version"] = 99;
  EXPECT_THROW(Live(c), CertificateFormatError);
  json d = CertFor("four is even");
  d.erase("tokens");
  EXPECT_THROW(Live(d), CertificateFormatError);
}

// ---------------------------------------------------------------------------
// Mutation campaign.

TEST(MutationTest, EverySemanticMutantIsRejected) {
  int meaningful = 0;
  for (const char* s : {"four is even", "every odd natural is even", "addone given 3 returns a natural",
                        "four is even and positive", "sort is a permutation", "union is associative"}) {
    json cert = CertFor(s);
    for (const auto& m : testing::Mutants(cert, DemoLexicon().signature(), 5)) {
      if (m.exempt) continue;
      ++meaningful;
      bool rejected;
      try {
        rejected = !Live(m.doc).accepted();
      } catch (const CertificateFormatError&) {
        rejected = true;
      }
      EXPECT_TRUE(rejected) << s << " " << m.kind << " at " << m.field << " -> " << m.doc[json::json_pointer(m.field)];
    }
  }
  EXPECT_GT(meaningful, 100);
}

}  // namespace
}  // namespace catspec
