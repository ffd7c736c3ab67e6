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

#ifndef ACTIVITYKB_TESTS_ORACLE_RANDOM_GEN_H_
#define ACTIVITYKB_TESTS_ORACLE_RANDOM_GEN_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "activitykb/aggregate.h"
#include "activitykb/corpus.h"
#include "activitykb/tc_lang.h"

namespace akb::oracle {

using Rng = std::mt19937_64;

// Portable uniform draw in [0, n).
std::uint64_t Uniform(Rng& rng, std::uint64_t n);
bool Chance(Rng& rng, double p);

// Random pattern of the given depth over a small tag/literal vocabulary.
// References draw from `rule_names` (may be empty).
tc::PatternExpr RandomPattern(Rng& rng, int depth, const std::vector<std::string>& rule_names);

// Helper rules h1..h<n> (no references) plus `main` of the given depth,
// pipeline freq(main).
tc::TcProgram RandomProgram(Rng& rng, int depth, int helpers = 2);

// Tokens drawn from the fixed vocabulary, one sentence.
std::vector<TaggedToken> RandomSentence(Rng& rng, std::size_t max_len,
                                        const std::string& doc = "d", std::uint32_t sent = 0,
                                        std::uint64_t first_idx = 0);

// Documents of loosely grammatical sentences, at most `max_tokens` overall.
std::vector<Document> RandomCorpus(Rng& rng, std::size_t max_tokens);

// Rows r00.., dims d00..; coarse values so that score ties happen.
MiTable RandomMiTable(Rng& rng, int rows, int dims, double density);
FreqTable RandomRowFreq(Rng& rng, const MiTable& mi);

PairTable RandomPairTable(Rng& rng, int labels, int span, bool ordered);
FreqTable RandomFreqTable(Rng& rng, int labels);

}  // namespace akb::oracle

#endif  // ACTIVITYKB_TESTS_ORACLE_RANDOM_GEN_H_
