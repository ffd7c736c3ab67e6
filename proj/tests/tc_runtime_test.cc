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

#include <memory>

#include <gtest/gtest.h>

#include "activitykb/knowledge_base.h"
#include "activitykb/pipeline.h"
#include "activitykb/tc_runtime.h"
#include "test_util.h"

namespace akb::tc {
namespace {

using akb::testing::FixtureDir;
using akb::testing::ReadFileText;
using akb::testing::Tokens;
using Pairs = std::vector<std::pair<std::string, std::string>>;

std::vector<Match> Scan(std::string_view source, std::string_view rule,
                        std::string_view sentence, std::uint64_t first_idx = 0) {
  CheckedProgram program = ParseAndCheck(source);
  CompiledPattern pattern = CompileRule(program, rule);
  auto tokens = Tokens(sentence, "d1", first_idx);
  return ScanSentence(pattern, tokens);
}

std::vector<std::string> Labels(const std::vector<Match>& matches) {
  std::vector<std::string> out;
  for (const Match& m : matches) out.push_back(m.label);
  return out;
}

std::string Laptop() { return ReadFileText(FixtureDir() / "scripts" / "laptop.tc"); }
// The mining script's affordance program; its vp takes an optional particle.
std::string Svo() { return scripts::Instantiate(scripts::kObjectAffordanceTemplate, 50); }

TEST(ScanSentenceTest, LaptopVerbPhraseReturnsJustTheVerb) {
  auto matches = Scan(Laptop(), "verb_phrase",
                      "he/PRON throw/VERB the/DET broken/ADJ laptop/NOUN", 100);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].label, "throw");
  EXPECT_EQ(matches[0].rule, "verb_phrase");
  EXPECT_EQ(matches[0].doc_id, "d1");
  EXPECT_EQ(matches[0].start_idx, 101u);
  EXPECT_EQ(matches[0].end_idx, 105u);
  EXPECT_EQ(matches[0].kept, (std::vector<std::uint32_t>{1}));
  EXPECT_FALSE(matches[0].tracked);
}

TEST(ScanSentenceTest, LaptopAloneHasNoVerb) {
  EXPECT_TRUE(Scan(Laptop(), "verb_phrase", "laptop/NOUN").empty());
}

TEST(ScanSentenceTest, MinusOverRuleRefIsRequired) {
  EXPECT_TRUE(Scan(Laptop(), "verb_phrase", "he/PRON throw/VERB it/PRON").empty());
}

TEST(ScanSentenceTest, MinusOverAtomIsOptionalAndDropped) {
  const char* src = "a = [VERB] [DET]- [NOUN]\nfreq(a)\n";
  EXPECT_EQ(Labels(Scan(src, "a", "eat/VERB the/DET steak/NOUN")),
            (std::vector<std::string>{"eat steak"}));
  EXPECT_EQ(Labels(Scan(src, "a", "eat/VERB steak/NOUN")),
            (std::vector<std::string>{"eat steak"}));
}

TEST(ScanSentenceTest, NounPhraseDropsAdjectivesOnly) {
  const char* src = "np = [DET]? ([ADJ]- [NOUN])+\nfreq(np)\n";
  auto matches = Scan(src, "np", "the/DET old/ADJ grocery/NOUN store/NOUN");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].label, "the grocery store");
}

TEST(ScanSentenceTest, ObjectNormalizationStripsDeterminer) {
  auto program = std::make_shared<const CheckedProgram>(
      ParseAndCheck("np = [DET]? ([ADJ]- [NOUN])+\nfreq(np)\n"));
  PipelineRunner runner(program, PipelineOptions{{"np"}});
  auto tokens = Tokens("the/DET old/ADJ grocery/NOUN store/NOUN");
  auto matches = runner.ScanDocument("np", tokens);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].label, "grocery store");
}

TEST(ScanSentenceTest, LiteralsMatchLemmaCaseInsensitively) {
  auto tokens = Tokens("she/PRON eat/VERB");
  tokens[0].surface = "She";
  CheckedProgram program = ParseAndCheck("a = \"SHE\" [VERB]\nfreq(a)\n");
  auto matches = ScanSentence(CompileRule(program, "a"), tokens);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].label, "she eat");
}

TEST(ScanSentenceTest, RepetitionIsGreedyAndCommitted) {
  // [NOUN]+ swallows every noun, so the trailing [NOUN] can never match.
  EXPECT_TRUE(Scan("a = [NOUN]+ [NOUN]\nfreq(a)\n", "a", "dog/NOUN cat/NOUN").empty());
  EXPECT_EQ(Labels(Scan("a = [NOUN]+\nfreq(a)\n", "a", "dog/NOUN cat/NOUN")),
            (std::vector<std::string>{"dog cat"}));
  // Optional is greedy too: [DET]? takes "the", then [DET] fails.
  EXPECT_TRUE(Scan("a = [DET]? [DET] [NOUN]\nfreq(a)\n", "a", "the/DET dog/NOUN").empty());
}

TEST(ScanSentenceTest, AlternationTakesFirstSuccessfulBranch) {
  EXPECT_EQ(Labels(Scan("a = [VERB] | [VERB] [NOUN]\nfreq(a)\n", "a", "eat/VERB steak/NOUN")),
            (std::vector<std::string>{"eat"}));
}

TEST(ScanSentenceTest, EmptyMatchesAreDiscarded) {
  const char* src = "a = [DET]?\nfreq(a)\n";
  EXPECT_TRUE(Scan(src, "a", "dog/NOUN run/VERB").empty());
  EXPECT_EQ(Labels(Scan(src, "a", "dog/NOUN the/DET cat/NOUN")),
            (std::vector<std::string>{"the"}));
}

TEST(ScanSentenceTest, MatchesAreLeftmostNonOverlappingAndDeterministic) {
  const char* src = "a = [DET] [NOUN]\nfreq(a)\n";
  const char* sentence = "the/DET dog/NOUN the/DET the/DET cat/NOUN a/DET fork/NOUN";
  auto first = Scan(src, "a", sentence);
  auto second = Scan(src, "a", sentence);
  EXPECT_EQ(first, second);
  ASSERT_EQ(first.size(), 3u);
  EXPECT_EQ(Labels(first), (std::vector<std::string>{"the dog", "the cat", "a fork"}));
  for (std::size_t i = 1; i < first.size(); ++i) {
    EXPECT_LE(first[i - 1].end_idx, first[i].start_idx);
  }
}

TEST(CompileTest, EmptyCapablePatternWarns) {
  CheckedProgram program = ParseAndCheck("a = [DET]?\nfreq(a)\n");
  std::vector<std::string> warnings;
  CompiledPattern pattern = CompileRule(program, "a", &warnings);
  EXPECT_TRUE(pattern.can_match_empty());
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("can match empty"), std::string::npos);
  EXPECT_EQ(Compile(program).warnings, warnings);
}

TEST(CompileTest, PaperScriptsCompile) {
  for (const char* name :
       {"laptop", "activity_object", "object_affordance", "activity_activity"}) {
    CheckedProgram program =
        ParseAndCheck(ReadFileText(FixtureDir() / "scripts" / (std::string(name) + ".tc")));
    EXPECT_FALSE(Compile(program).patterns.empty()) << name;
  }
}

TEST(CompileTest, SvoTracksNpAndVp) {
  CheckedProgram program = ParseAndCheck(Svo());
  CompiledPattern svo = CompileRule(program, "svo");
  EXPECT_TRUE(svo.tracked());
  EXPECT_EQ(svo.tracked_rules(), (std::vector<std::string>{"np", "vp"}));
  EXPECT_FALSE(CompileRule(program, "np").tracked());
}

TEST(EmitPairsTest, SubjectOnly) {
  auto matches = Scan(Svo(), "svo", "coffee/NOUN spill/VERB");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_TRUE(matches[0].tracked);
  EXPECT_EQ(EmitPairs(matches[0]), (Pairs{{"coffee", "spill"}}));
}

TEST(EmitPairsTest, SubjectAndObject) {
  auto matches = Scan(Svo(), "svo", "cat/NOUN chase/VERB mouse/NOUN");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(EmitPairs(matches[0]), (Pairs{{"cat", "chase"}, {"mouse", "chase"}}));
  ASSERT_EQ(matches[0].sublabels.size(), 3u);
  EXPECT_EQ(matches[0].sublabels[0].role, ComponentRole::kAnchor);
  EXPECT_EQ(matches[0].sublabels[1].role, ComponentRole::kHead);
  EXPECT_EQ(matches[0].sublabels[2].role, ComponentRole::kAnchor);
}

TEST(EmitPairsTest, VerbatimAffordanceScriptNeedsAParticle) {
  const std::string verbatim = ReadFileText(FixtureDir() / "scripts" / "object_affordance.tc");
  EXPECT_TRUE(Scan(verbatim, "svo", "cat/NOUN chase/VERB mouse/NOUN").empty());
  auto matches = Scan(verbatim, "svo", "cat/NOUN look/VERB at/ADP the/DET mouse/NOUN");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(EmitPairs(matches[0]), (Pairs{{"cat", "look at"}, {"the mouse", "look at"}}));
}

TEST(EmitPairsTest, PronounSubjectIsNotSvo) {
  EXPECT_TRUE(Scan(Svo(), "svo", "she/PRON sip/VERB coffee/NOUN").empty());
  // ... but it is an activity for the activity pipeline's pattern.
  std::string activity = scripts::Instantiate(scripts::kActivityObjectTemplate, 50);
  EXPECT_EQ(Labels(Scan(activity, "activity", "she/PRON sip/VERB coffee/NOUN")),
            (std::vector<std::string>{"sip coffee"}));
}

TEST(EmitPairsTest, UntrackedMatchIsContractError) {
  auto matches = Scan(Laptop(), "verb_phrase", "throw/VERB the/DET laptop/NOUN");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(akb::testing::CodeOf([&] { EmitPairs(matches[0]); }), ErrorCode::kContract);
}

TEST(JoinLemmasTest, JoinsKeptOffsets) {
  auto tokens = Tokens("he/PRON wash/VERB his/DET hair/NOUN");
  std::vector<std::uint32_t> kept{1, 3};
  EXPECT_EQ(JoinLemmas(tokens, kept), "wash hair");
}

}  // namespace
}  // namespace akb::tc
