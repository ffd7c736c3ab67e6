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

#ifndef ACTIVITYKB_SYNTHETIC_H_
#define ACTIVITYKB_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "activitykb/corpus.h"

namespace akb {

// `count` documents, each with one sentence realizing `activity` followed
// by one short sentence per object, all inside one window.
struct ActivityTemplate {
  std::vector<std::string> objects;
  std::string activity;
  std::uint64_t count = 0;
};

// `count` documents where `first` is directly followed by `second`.
struct SequenceTemplate {
  std::string first;
  std::string second;
  std::uint64_t count = 0;
};

struct SyntheticSpec {
  std::vector<ActivityTemplate> activities;
  std::vector<SequenceTemplate> sequences;
  // Distractor tokens per planted token, split around each planted core.
  double noise_ratio = 0.0;
  std::uint64_t seed = 1;
  int span = 50;
  std::size_t docs_per_file = 500;
  std::size_t distractor_nouns = 400;
  std::size_t distractor_verbs = 200;
};

// 24 activity templates with disjoint three-object sets, 20 activity
// sequences, noise at ten distractor tokens per planted token.
SyntheticSpec DefaultSyntheticSpec();

// Multiplies every template count by `factor`.
SyntheticSpec ScaleSpec(SyntheticSpec spec, std::uint64_t factor);

SyntheticSpec ParseSyntheticSpec(std::string_view json);
SyntheticSpec LoadSyntheticSpec(const std::filesystem::path& path);
std::string SyntheticSpecToJson(const SyntheticSpec& spec);

struct SyntheticStats {
  std::uint64_t docs = 0;
  std::uint64_t sentences = 0;
  std::uint64_t planted_sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t planted_tokens = 0;
  std::uint64_t noise_tokens = 0;
  std::uint64_t files = 0;
};

// Deterministic for a given spec. Throws Error(kInvalidArgument) for an
// empty spec and for templates whose planted core cannot fit one window or
// whose activity label cannot be realized as a matching sentence.
std::vector<Document> GenerateSyntheticDocuments(const SyntheticSpec& spec,
                                                 SyntheticStats* stats = nullptr);

// Writes part-NNNNN.tsv files into `out_dir` (created if needed).
SyntheticStats GenerateSyntheticCorpus(const SyntheticSpec& spec,
                                       const std::filesystem::path& out_dir);

// The tokens a planted activity label is realized as, with the given subject
// pronoun. Exposed for tests.
std::vector<std::pair<std::string, PosTag>> RealizeActivity(std::string_view activity,
                                                            std::string_view pronoun);

}  // namespace akb

#endif  // ACTIVITYKB_SYNTHETIC_H_
