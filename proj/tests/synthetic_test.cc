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

#include <gtest/gtest.h>

#include "activitykb/knowledge_base.h"
#include "activitykb/synthetic.h"
#include "test_util.h"

namespace akb {
namespace {

using akb::testing::CodeOf;
using akb::testing::TempDir;

PairTable ActivityObjectCounts(const SyntheticSpec& spec) {
  MineConfig config;
  config.min_count = 1;
  config.built_at = "x";
  return MineDocuments(GenerateSyntheticDocuments(spec), config).kb.activity_object.counts;
}

SyntheticSpec StoveSpec() {
  SyntheticSpec spec;
  spec.activities = {{{"stove", "pot", "spoon"}, "cook", 100}};
  spec.noise_ratio = 10;
  spec.seed = 7;
  return spec;
}

TEST(SyntheticTest, PlantedCoOccurrenceCountIsExact) {
  PairTable counts = ActivityObjectCounts(StoveSpec());
  EXPECT_EQ(counts.pair_counts.at({"stove", "cook"}), 100u);
  EXPECT_EQ(counts.pair_counts.at({"pot", "cook"}), 100u);
  EXPECT_EQ(counts.pair_counts.at({"spoon", "cook"}), 100u);
}

TEST(SyntheticTest, ExactWithoutNoiseToo) {
  SyntheticSpec spec = StoveSpec();
  spec.noise_ratio = 0;
  PairTable counts = ActivityObjectCounts(spec);
  EXPECT_EQ(counts.pair_counts.at({"stove", "cook"}), 100u);
  EXPECT_EQ(counts.pair_counts.size(), 3u);
}

TEST(SyntheticTest, SharedObjectGivesBothFamilies) {
  SyntheticSpec spec;
  spec.activities = {{{"stove", "pot"}, "cook", 30}, {{"pot", "water"}, "boil water", 20}};
  spec.noise_ratio = 5;
  PairTable counts = ActivityObjectCounts(spec);
  EXPECT_EQ(counts.pair_counts.at({"stove", "cook"}), 30u);
  EXPECT_EQ(counts.pair_counts.at({"pot", "cook"}), 30u);
  EXPECT_EQ(counts.pair_counts.at({"pot", "boil water"}), 20u);
  // "water" pairs twice per instance: once from the planted "the water ."
  // sentence and once from the noun phrase inside "boil the water".
  EXPECT_EQ(counts.pair_counts.at({"water", "boil water"}), 40u);
}

TEST(SyntheticTest, SequencesArePlantedInOrder) {
  SyntheticSpec spec;
  spec.sequences = {{"wake up", "make coffee", 40}};
  spec.noise_ratio = 4;
  MineConfig config;
  config.min_count = 1;
  config.built_at = "x";
  KnowledgeBase kb = MineDocuments(GenerateSyntheticDocuments(spec), config).kb;
  const auto& pairs = kb.activity_activity.counts.pair_counts;
  EXPECT_EQ(pairs.at({"wake up", "make coffee"}), 40u);
  EXPECT_FALSE(pairs.count({"make coffee", "wake up"}));
}

TEST(SyntheticTest, EmptySpecIsError) {
  EXPECT_EQ(CodeOf([] { GenerateSyntheticDocuments(SyntheticSpec{}); }),
            ErrorCode::kInvalidArgument);
}

TEST(SyntheticTest, InfeasibleWindowIsError) {
  SyntheticSpec spec;
  spec.span = 8;
  spec.activities = {{{"stove", "pot", "spoon", "ladle"}, "cook", 1}};
  EXPECT_EQ(CodeOf([&] { GenerateSyntheticDocuments(spec); }), ErrorCode::kInvalidArgument);
  spec.activities = {{{"stove", "pot"}, "cook", 1}};
  EXPECT_NO_THROW(GenerateSyntheticDocuments(spec));
}

TEST(SyntheticTest, UnrealizableActivityIsError) {
  SyntheticSpec spec;
  spec.activities = {{{"stove"}, "", 1}};
  EXPECT_EQ(CodeOf([&] { GenerateSyntheticDocuments(spec); }), ErrorCode::kInvalidArgument);
}

TEST(SyntheticTest, DeterministicForASeed) {
  SyntheticSpec spec = StoveSpec();
  SyntheticStats s1;
  SyntheticStats s2;
  auto a = GenerateSyntheticDocuments(spec, &s1);
  auto b = GenerateSyntheticDocuments(spec, &s2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].tokens, b[i].tokens);
  EXPECT_EQ(s1.tokens, s2.tokens);
  spec.seed = 8;
  auto c = GenerateSyntheticDocuments(spec);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) differs = a[i].tokens != c[i].tokens;
  EXPECT_TRUE(differs);
}

TEST(SyntheticTest, StatsAddUp) {
  SyntheticStats stats;
  auto docs = GenerateSyntheticDocuments(StoveSpec(), &stats);
  std::uint64_t tokens = 0;
  for (const Document& d : docs) tokens += d.tokens.size();
  EXPECT_EQ(stats.tokens, tokens);
  EXPECT_EQ(stats.docs, docs.size());
  EXPECT_EQ(stats.planted_tokens + stats.noise_tokens, stats.tokens);
  EXPECT_EQ(stats.planted_sentences, 100u * 4);
  EXPECT_NEAR(static_cast<double>(stats.noise_tokens) / stats.planted_tokens, 10.0, 0.6);
}

TEST(SyntheticTest, DefaultSpecHasTenThousandPlantedSentences) {
  SyntheticStats stats;
  GenerateSyntheticDocuments(DefaultSyntheticSpec(), &stats);
  EXPECT_GE(stats.planted_sentences, 10000u);
  EXPECT_GT(stats.tokens, 300000u);
}

TEST(SyntheticTest, FilesRoundTripThroughReader) {
  TempDir dir;
  SyntheticSpec spec = StoveSpec();
  spec.docs_per_file = 30;
  SyntheticStats stats = GenerateSyntheticCorpus(spec, dir.path());
  EXPECT_EQ(stats.files, 4u);
  CorpusStats read;
  std::vector<Document> docs = ReadCorpus(dir.path(), &read);
  EXPECT_EQ(read.total_tokens, stats.tokens);
  std::vector<Document> expected = GenerateSyntheticDocuments(spec);
  ASSERT_EQ(docs.size(), expected.size());
  for (std::size_t i = 0; i < docs.size(); ++i) EXPECT_EQ(docs[i].tokens, expected[i].tokens);
}

TEST(SyntheticTest, SpecJsonRoundTrip) {
  SyntheticSpec spec = DefaultSyntheticSpec();
  SyntheticSpec back = ParseSyntheticSpec(SyntheticSpecToJson(spec));
  EXPECT_EQ(SyntheticSpecToJson(back), SyntheticSpecToJson(spec));
  EXPECT_EQ(back.activities.size(), spec.activities.size());
  EXPECT_EQ(CodeOf([] { ParseSyntheticSpec("{not json"); }), ErrorCode::kParse);
}

TEST(SyntheticTest, ScaleSpecMultipliesCounts) {
  SyntheticSpec spec = ScaleSpec(StoveSpec(), 3);
  EXPECT_EQ(spec.activities[0].count, 300u);
}

TEST(SyntheticTest, RealizeActivityShapes) {
  auto words = RealizeActivity("turn on radio", "she");
  std::vector<std::pair<std::string, PosTag>> expected = {
      {"she", PosTag::kPron}, {"turn", PosTag::kVerb}, {"on", PosTag::kAdp},
      {"the", PosTag::kDet},  {"radio", PosTag::kNoun}, {".", PosTag::kPunct}};
  EXPECT_EQ(words, expected);
}

}  // namespace
}  // namespace akb
