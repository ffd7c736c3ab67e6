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

#ifndef ACTIVITYKB_KNOWLEDGE_BASE_H_
#define ACTIVITYKB_KNOWLEDGE_BASE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "activitykb/aggregate.h"
#include "activitykb/corpus.h"

namespace akb {

namespace scripts {

// The three mining programs. `{span}` is replaced by the configured window.
extern const std::string_view kActivityObjectTemplate;
extern const std::string_view kObjectAffordanceTemplate;
extern const std::string_view kActivityActivityTemplate;

std::string Instantiate(std::string_view script_template, int span);

}  // namespace scripts

struct MineConfig {
  int span = 50;
  double k = 10.0;
  std::uint64_t min_count = 2;
  int shards = 1;
  // Recorded as meta.built_at. Empty means "latest corpus file mtime", which
  // keeps repeated builds of the same corpus byte-identical.
  std::string built_at;
};

// Pruned pair counts and their MI scores.
struct StatTable {
  PairTable counts;
  MiTable mi;

  bool operator==(const StatTable&) const = default;
};

struct KbMeta {
  std::uint64_t corpus_size = 0;
  std::uint64_t total_docs = 0;
  int span = 50;
  double k = 10.0;
  std::uint64_t min_count = 2;
  std::string built_at;
  std::map<std::string, std::string> script_hashes;  // crc32 of each script

  bool operator==(const KbMeta&) const = default;
};

struct KnowledgeBase {
  // (object, activity) pairs.
  StatTable activity_object;
  // (object, affordance) pairs from subject-verb-object matches.
  StatTable object_affordance;
  // (earlier activity, later activity) pairs.
  StatTable activity_activity;
  FreqTable activity_freq;
  FreqTable object_freq;
  KbMeta meta;

  bool empty() const;
  bool operator==(const KnowledgeBase&) const = default;
};

struct MineResult {
  KnowledgeBase kb;
  std::vector<std::string> warnings;
};

// One pass over the corpus; documents are dealt round-robin to
// `config.shards` workers whose counts are merged in shard order.
MineResult Mine(const std::filesystem::path& corpus, const MineConfig& config);

// Same, over documents already in memory.
MineResult MineDocuments(const std::vector<Document>& docs, const MineConfig& config);

void SaveKnowledgeBase(const KnowledgeBase& kb, const std::filesystem::path& path);
std::string SerializeKnowledgeBase(const KnowledgeBase& kb);

// Throws Error(kVersion) on an unknown format version and Error(kChecksum)
// when the trailing checksum is missing or wrong.
KnowledgeBase LoadKnowledgeBase(const std::filesystem::path& path);
KnowledgeBase DeserializeKnowledgeBase(std::string_view bytes);

inline constexpr int kKbFormatVersion = 1;

}  // namespace akb

#endif  // ACTIVITYKB_KNOWLEDGE_BASE_H_
