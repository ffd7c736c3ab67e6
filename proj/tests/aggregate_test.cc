// Copyright 2026 The activitykb Authors.
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

#include <cmath>
#include <memory>
#include <variant>

#include <gtest/gtest.h>

#include "activitykb/aggregate.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/pipeline.h"
#include "oracle/mi_oracle.h"
#include "test_util.h"

namespace akb {
namespace {

using akb::testing::CodeOf;
using akb::testing::FixtureDir;
using akb::testing::ReadFileText;
using Pairs = std::vector<LabelPair>;

tc::Match M(std::string label, std::uint64_t start, std::string doc = "d1") {
  tc::Match m;
  m.rule = "r";
  m.doc_id = std::move(doc);
  m.start_idx = start;
  m.end_idx = start + 1;
  m.label = std::move(label);
  return m;
}

TEST(FreqTest, CountsLabels) {
  std::vector<tc::Match> matches{M("open", 0), M("close", 5), M("open", 9)};
  FreqTable t = Freq(matches);
  EXPECT_EQ(t.counts, (std::map<std::string, std::uint64_t>{{"close", 1}, {"open", 2}}));
  EXPECT_EQ(t.total, 3u);
}

TEST(FreqTest, EmptyStreamAndEmptyLabels) {
  EXPECT_EQ(Freq({}), FreqTable{});
  std::vector<tc::Match> matches{M("", 0)};
  EXPECT_EQ(Freq(matches).total, 0u);
}

TEST(FreqTest, LaptopFixtureReproducesPlantedCounts) {
  auto program = std::make_shared<const tc::CheckedProgram>(
      tc::ParseAndCheck(ReadFileText(FixtureDir() / "scripts" / "laptop.tc")));
  PipelineRunner runner(program);
  for (const Document& doc : ReadCorpus(FixtureDir() / "laptop.tsv")) {
    runner.ProcessDocument(doc);
  }
  auto result = FinishPipeline(*program, runner.counts(), 10.0);
  const FreqTable& freq = std::get<FreqTable>(result);
  EXPECT_EQ(freq.counts, (std::map<std::string, std::uint64_t>{
                             {"close", 7}, {"open", 11}, {"restart", 4}, {"shut", 6}}));
  EXPECT_EQ(freq.total, 28u);
}

TEST(CoOccurTest, WithinSpan) {
  std::vector<tc::Match> np{M("backpack", 10)};
  std::vector<tc::Match> vp{M("pack", 40)};
  EXPECT_EQ(CoOccur(np, vp, 50), (Pairs{{"backpack", "pack"}}));
}

TEST(CoOccurTest, DistanceFiftyOneIsOutside) {
  std::vector<tc::Match> np{M("backpack", 10)};
  EXPECT_TRUE(CoOccur(np, std::vector<tc::Match>{M("pack", 61)}, 50).empty());
  EXPECT_EQ(CoOccur(np, std::vector<tc::Match>{M("pack", 60)}, 50).size(), 1u);
  // The window is symmetric around the anchor.
  std::vector<tc::Match> late{M("backpack", 100)};
  EXPECT_TRUE(CoOccur(late, std::vector<tc::Match>{M("pack", 49)}, 50).empty());
  EXPECT_EQ(CoOccur(late, std::vector<tc::Match>{M("pack", 50)}, 50).size(), 1u);
}

TEST(CoOccurTest, ExhaustivePairing) {
  std::vector<tc::Match> np{M("fork", 0), M("plate", 4)};
  std::vector<tc::Match> vp{M("eat", 2), M("cut", 6)};
  Pairs pairs = CoOccur(np, vp, 50);
  std::sort(pairs.begin(), pairs.end());
  EXPECT_EQ(pairs, (Pairs{{"fork", "cut"}, {"fork", "eat"}, {"plate", "cut"}, {"plate", "eat"}}));
}

TEST(CoOccurTest, IdenticalSpanAndOtherDocumentsExcluded) {
  std::vector<tc::Match> a{M("x", 3), M("y", 9)};
  Pairs self = CoOccur(a, a, 50);
  EXPECT_EQ(self, (Pairs{{"x", "y"}, {"y", "x"}}));
  std::vector<tc::Match> other{M("z", 3, "d2")};
  EXPECT_TRUE(CoOccur(a, other, 50).empty());
}

TEST(CoOccurTest, ZeroSpanIsArgumentError) {
  EXPECT_EQ(CodeOf([] { CoOccur({}, {}, 0); }), ErrorCode::kInvalidArgument);
}

TEST(SkipGramTest, OrderMatters) {
  std::vector<tc::Match> m{M("wash hair", 0), M("blow dry hair", 20)};
  EXPECT_EQ(SkipGram(m, 2, 50), (Pairs{{"wash hair", "blow dry hair"}}));
}

TEST(SkipGramTest, SingleMatchIsEmpty) {
  std::vector<tc::Match> m{M("x", 0)};
  EXPECT_TRUE(SkipGram(m, 2, 50).empty());
}

TEST(SkipGramTest, WindowLimitsPairs) {
  std::vector<tc::Match> m{M("one", 0), M("two", 30), M("three", 60)};
  EXPECT_EQ(SkipGram(m, 2, 50), (Pairs{{"one", "two"}, {"two", "three"}}));
}

TEST(SkipGramTest, ErrorsForUnsupportedNAndBadSpan) {
  EXPECT_EQ(CodeOf([] { SkipGram({}, 3, 50); }), ErrorCode::kUnsupported);
  EXPECT_EQ(CodeOf([] { SkipGram({}, 2, 0); }), ErrorCode::kInvalidArgument);
}

TEST(MiScoreTest, DerivedExamples) {
  EXPECT_NEAR(MiScore(5, 10, 20, 1000, 50, 0.0), -1.0, 1e-12);
  EXPECT_NEAR(MiScore(5, 10, 20, 1000, 50, 10.0), std::log2(1.5), 1e-12);
  EXPECT_NEAR(MiScore(5, 10, 20, 1000, 50, 10.0), 0.58496, 1e-5);
  // AB * corpusSize == A * B * span.
  EXPECT_DOUBLE_EQ(MiScore(10, 10, 20, 1000, 50, 0.0), 0.0);
  EXPECT_NEAR(MiScore(5, 10, 20, 1000, 50, 10.0), oracle::OracleMiScore(5, 10, 20, 1000, 50, 10.0),
              1e-12);
}

TEST(MiScoreTest, ZeroMarginalIsContractError) {
  EXPECT_EQ(CodeOf([] { MiScore(1, 0, 1, 10, 1, 0); }), ErrorCode::kContract);
}

TEST(MiTest, CarriesMetadataAndScoresEveryPair) {
  PairTable t(50, false);
  t.corpus_size = 1000;
  t.AddPair({"a", "b"}, 5);
  t.AddPair({"a", "c"}, 10);
  t.marginals_a["a"] = 10;
  t.marginals_b["b"] = 20;
  t.marginals_b["c"] = 20;
  MiTable mi = Mi(t, 10.0);
  EXPECT_EQ(mi.span, 50);
  EXPECT_EQ(mi.corpus_size, 1000u);
  EXPECT_EQ(mi.k, 10.0);
  ASSERT_EQ(mi.values.size(), 2u);
  EXPECT_NEAR(mi.values.at({"a", "b"}), std::log2(1.5), 1e-12);
  EXPECT_NEAR(mi.values.at({"a", "c"}), std::log2(2.0), 1e-12);
}

TEST(MiTest, MissingMarginalOrCorpusIsContractError) {
  PairTable t(50, false);
  t.corpus_size = 10;
  t.AddPair({"a", "b"});
  EXPECT_EQ(CodeOf([&] { Mi(t, 10); }), ErrorCode::kContract);
  PairTable empty(50, false);
  EXPECT_EQ(CodeOf([&] { Mi(empty, 10); }), ErrorCode::kContract);
}

TEST(MergeTest, FreqTables) {
  FreqTable t1;
  t1.Add("a");
  FreqTable t2;
  t2.Add("a", 2);
  t2.Add("b");
  FreqTable merged = Merge(t1, t2);
  EXPECT_EQ(merged.counts, (std::map<std::string, std::uint64_t>{{"a", 3}, {"b", 1}}));
  EXPECT_EQ(merged.total, 4u);
  EXPECT_EQ(Merge(t2, FreqTable{}), t2);
}

TEST(MergeTest, PairTablesAddCountsAndCorpusSize) {
  PairTable t1(50, false);
  t1.AddPair({"a", "b"}, 2);
  t1.marginals_a["a"] = 2;
  t1.marginals_b["b"] = 2;
  t1.corpus_size = 100;
  PairTable t2 = t1;
  t2.corpus_size = 50;
  PairTable merged = Merge(t1, t2);
  EXPECT_EQ(merged.pair_counts.at({"a", "b"}), 4u);
  EXPECT_EQ(merged.marginals_a.at("a"), 4u);
  EXPECT_EQ(merged.corpus_size, 150u);
  EXPECT_EQ(Merge(t1, PairTable(50, false)), t1);
}

TEST(MergeTest, SpanMismatchIsError) {
  EXPECT_EQ(CodeOf([] { Merge(PairTable(50, false), PairTable(10, false)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Merge(PairTable(50, false), PairTable(50, true)); }),
            ErrorCode::kInvalidArgument);
}

TEST(PruneTest, DropsRarePairsAndKeepsInvariants) {
  PairTable t(50, false);
  t.corpus_size = 10;
  t.AddPair({"a", "b"}, 3);
  t.AddPair({"a", "c"}, 1);
  t.AddPair({"d", "b"}, 2);
  t.marginals_a = {{"a", 4}, {"d", 1}};
  t.marginals_b = {{"b", 5}, {"c", 1}};
  PairTable pruned = Prune(t, 2);
  EXPECT_EQ(pruned.pair_counts.size(), 2u);
  EXPECT_FALSE(pruned.marginals_b.count("c"));
  EXPECT_EQ(pruned.marginals_a.at("a"), 4u);  // marginals keep full counts
  EXPECT_EQ(pruned.corpus_size, 10u);
  PairTable by_label = Prune(t, 2, 2);
  EXPECT_EQ(by_label.pair_counts.size(), 1u);
  EXPECT_FALSE(by_label.marginals_a.count("d"));
}

TEST(PipelineTest, ShardedRunEqualsSingleRun) {
  // The mining script: the verbatim listing's vp requires a particle after
  // every verb, which the laptop sentences never have.
  auto program = std::make_shared<const tc::CheckedProgram>(
      tc::ParseAndCheck(scripts::Instantiate(scripts::kActivityObjectTemplate, 50)));
  std::vector<Document> docs = ReadCorpus(FixtureDir() / "laptop.tsv");
  PipelineRunner whole(program, {{"np"}});
  PipelineRunner left(program, {{"np"}});
  PipelineRunner right(program, {{"np"}});
  for (std::size_t i = 0; i < docs.size(); ++i) {
    whole.ProcessDocument(docs[i]);
    (i % 2 == 0 ? left : right).ProcessDocument(docs[i]);
  }
  PipelineCounts merged = left.counts();
  merged.MergeFrom(right.counts());
  EXPECT_EQ(merged, whole.counts());
  EXPECT_GE(whole.counts().corpus_size, 300u);
  EXPECT_EQ(FinishPipeline(*program, merged, 10.0), FinishPipeline(*program, whole.counts(), 10.0));
}

TEST(PipelineTest, MiMatchesBruteForceOnLaptopFixture) {
  // The mining script: the verbatim listing's vp requires a particle after
  // every verb, which the laptop sentences never have.
  auto program = std::make_shared<const tc::CheckedProgram>(
      tc::ParseAndCheck(scripts::Instantiate(scripts::kActivityObjectTemplate, 50)));
  std::vector<Document> docs = ReadCorpus(FixtureDir() / "laptop.tsv");
  PipelineRunner runner(program, {{"np"}});
  for (const Document& doc : docs) runner.ProcessDocument(doc);
  const MiTable mi = std::get<MiTable>(FinishPipeline(*program, runner.counts(), 10.0, 1));
  oracle::OracleTables expected = oracle::OracleMi(program->program, docs, {"np"}, 10.0, 1);
  EXPECT_EQ(runner.counts().pair_table.pair_counts, expected.pairs);
  ASSERT_EQ(mi.values.size(), expected.mi.size());
  EXPECT_FALSE(mi.values.empty());
  for (const auto& [pair, value] : expected.mi) {
    ASSERT_TRUE(mi.values.count(pair)) << pair.first << "/" << pair.second;
    EXPECT_NEAR(mi.values.at(pair), value, 1e-9);
  }
}

}  // namespace
}  // namespace akb
