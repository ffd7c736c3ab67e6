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

#ifndef ACTIVITYKB_AGGREGATE_H_
#define ACTIVITYKB_AGGREGATE_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "activitykb/tc_runtime.h"

namespace akb {

using LabelPair = std::pair<std::string, std::string>;

struct FreqTable {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void Add(const std::string& label, std::uint64_t n = 1);
  std::uint64_t Count(const std::string& label) const;

  bool operator==(const FreqTable&) const = default;
};

// Windowed pair counts plus the marginal label counts of both sides.
struct PairTable {
  PairTable() = default;
  PairTable(int span, bool ordered) : span(span), ordered(ordered) {}

  std::map<LabelPair, std::uint64_t> pair_counts;
  std::map<std::string, std::uint64_t> marginals_a;
  std::map<std::string, std::uint64_t> marginals_b;
  int span = 1;
  bool ordered = false;
  std::uint64_t corpus_size = 0;

  void AddPair(const LabelPair& pair, std::uint64_t n = 1);

  bool operator==(const PairTable&) const = default;
};

struct MiTable {
  std::map<LabelPair, double> values;
  int span = 1;
  bool ordered = false;
  std::uint64_t corpus_size = 0;
  double k = 0.0;

  bool operator==(const MiTable&) const = default;
};

// Counts of non-empty match labels.
FreqTable Freq(std::span<const tc::Match> matches);

// One (a.label, b.label) per pair of matches from the same document whose
// start offsets differ by at most `span`. A match is never paired with an
// identical span from the other stream. Throws Error(kInvalidArgument) when
// span < 1.
std::vector<LabelPair> CoOccur(std::span<const tc::Match> a,
                               std::span<const tc::Match> b, int span);

// Ordered (earlier, later) pairs of document-ordered matches whose starts
// are at most `span` apart. Only n = 2 is supported.
std::vector<LabelPair> SkipGram(std::span<const tc::Match> matches, int n,
                                int span);

// log2(((ab + k) * corpus_size) / (a * b * span)).
double MiScore(std::uint64_t ab, std::uint64_t a, std::uint64_t b,
               std::uint64_t corpus_size, int span, double k);

MiTable Mi(const PairTable& pairs, double k);

FreqTable Merge(const FreqTable& t1, const FreqTable& t2);
// Throws Error(kInvalidArgument) when span or orientation differ.
PairTable Merge(const PairTable& t1, const PairTable& t2);

// Drops pairs counted fewer than `min_pair_count` times and pairs whose
// labels occur fewer than `min_label_count` times; marginals are restricted
// to the labels that survive.
PairTable Prune(const PairTable& table, std::uint64_t min_pair_count,
                std::uint64_t min_label_count = 1);

}  // namespace akb

#endif  // ACTIVITYKB_AGGREGATE_H_
