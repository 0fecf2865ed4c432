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

#include "catspec/corpus.hpp"

#include <gtest/gtest.h>

#include "catspec/syntax.hpp"
#include "support.hpp"

namespace catspec {
namespace {

using testing::DemoLexicon;

TEST(CorpusTest, ShippedVfaCorpusPasses) {
  CorpusFile f = testing::ShippedCorpus("vfa.toml");
  ASSERT_EQ(f.cases.size(), 10u);
  EXPECT_EQ(f.cases[7].features, std::set<std::string>{"pair-coordination"});
  auto results = RunCorpus(f, DemoLexicon());
  ASSERT_EQ(results.size(), 10u);
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].id, f.cases[i].id);
    EXPECT_TRUE(results[i].pass) << results[i].id << ": " << results[i].detail;
    EXPECT_GT(results[i].wall_ms, 0);
    EXPECT_LE(results[i].wall_ms, f.budget_ms);
  }
}

TEST(CorpusTest, WorkedExamplesPass) {
  CorpusFile f = testing::ShippedCorpus("worked_examples.toml");
  for (const auto& r : RunCorpus(f, DemoLexicon())) EXPECT_TRUE(r.pass) << r.id << ": " << r.detail;
}

TEST(CorpusTest, PerturbedExpectationFailsAlone) {
  std::string text = testing::ReadFile(testing::CorpusPath("vfa.toml"));
  std::string from = "forall a b. union a b = union b a";
  std::size_t at = text.find(from);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, from.size(), "forall a b. union a b = union a b");
  CorpusFile f = ParseCorpus(text, testing::CorpusPath("vfa.toml"));
  ResolveCorpus(&f, DemoLexicon());
  auto results = RunCorpus(f, DemoLexicon());
  for (const auto& r : results) EXPECT_EQ(r.pass, r.id != "vfa-7") << r.id;
}

TEST(CorpusTest, ResultsKeepInputOrderUnderParallelism) {
  CorpusFile f = testing::ShippedCorpus("worked_examples.toml");
  RunOptions one, many;
  one.threads = 1;
  many.threads = 8;
  auto a = RunCorpus(f, DemoLexicon(), one);
  auto b = RunCorpus(f, DemoLexicon(), many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].status, b[i].status);
    EXPECT_EQ(a[i].readings, b[i].readings);
  }
}

TEST(CorpusTest, OverBudgetFails) {
  CorpusFile f = testing::ShippedCorpus("worked_examples.toml");
  RunOptions o;
  o.budget_ms = 1e-9;
  for (const auto& r : RunCorpus(f, DemoLexicon(), o)) EXPECT_FALSE(r.pass) << r.id;
}

TEST(CorpusTest, LimitOverridesApply) {
  CorpusFile f = testing::ShippedCorpus("vfa.toml");
  RunOptions o;
  o.fuel = 3;
  for (const auto& r : RunCorpus(f, DemoLexicon(), o)) EXPECT_EQ(r.status, "FuelExhausted") << r.id;
}

TEST(CorpusTest, RecordsCarryStats) {
  CorpusFile f = testing::ShippedCorpus("vfa.toml");
  auto results = RunCorpus(f, DemoLexicon());
  auto rec = CaseRecord(results[0]);
  EXPECT_EQ(rec["id"], "vfa-1");
  EXPECT_EQ(rec["result"], "PASS");
  EXPECT_GT(rec["stats"]["items"].get<int>(), 0);
  std::string table = FormatTable(results);
  EXPECT_NE(table.find("10/10 passed"), std::string::npos);
}

TEST(CorpusFormatTest, Errors) {
  EXPECT_THROW(ParseCorpus("[[case]]\nid = \"a\"\n", "x.toml"), CorpusError);
  EXPECT_THROW(ParseCorpus("[[case]]\nsentence = \"s\"\nmode = \"maybe\"\n", "x.toml"), CorpusError);
  EXPECT_THROW(ParseCorpus("[[case]]\nsentence = \"s\"\n", "x.toml"), CorpusError);
  EXPECT_THROW(ParseCorpus("[[case]]\nsentence = \"s\"\nmode = \"noParse\"\nflavour = 1\n", "x.toml"), CorpusError);
  EXPECT_THROW(ParseCorpus("[[case]]\nid = \"a\"\nsentence = \"s\"\nmode = \"noParse\"\n"
                           "[[case]]\nid = \"a\"\nsentence = \"t\"\nmode = \"noParse\"\n",
                           "x.toml"),
               CorpusError);
  EXPECT_THROW(ParseCorpus("budget_ms = -1\n", "x.toml"), CorpusError);
  EXPECT_THROW(LoadCorpus("/nonexistent/corpus.toml"), CorpusError);
}

TEST(CorpusFormatTest, ExpectedTermsMustTypeCheck) {
  CorpusFile f = ParseCorpus("[[case]]\nsentence = \"four is even\"\nexpect = \"even sort\"\n", "x.toml");
  EXPECT_THROW(ResolveCorpus(&f, DemoLexicon()), CorpusError);
}

TEST(CorpusFormatTest, PerCaseLimits) {
  CorpusFile f = ParseCorpus(
      "[limits]\nfuel = 500\n[[case]]\nsentence = \"x\"\nmode = \"noParse\"\n"
      "[[case]]\nsentence = \"y\"\nmode = \"noParse\"\n[case.limits]\nmax_lift = 1\n",
      "x.toml");
  ASSERT_EQ(f.cases.size(), 2u);
  EXPECT_EQ(f.cases[0].limits.fuel, 500);
  EXPECT_EQ(f.cases[1].limits.fuel, 500);
  EXPECT_EQ(f.cases[1].limits.max_lift, 1);
  EXPECT_EQ(f.cases[0].limits.max_lift, 2);
}

}  // namespace
}  // namespace catspec
