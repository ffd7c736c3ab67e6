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

#include "activitykb/aggregate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "activitykb/errors.h"

namespace akb {

void FreqTable::Add(const std::string& label, std::uint64_t n) {
  if (n == 0) return;
  counts[label] += n;
  total += n;
}

std::uint64_t FreqTable::Count(const std::string& label) const {
  auto it = counts.find(label);
  return it == counts.end() ? 0 : it->second;
}

void PairTable::AddPair(const LabelPair& pair, std::uint64_t n) {
  if (n == 0) return;
  pair_counts[pair] += n;
}

FreqTable Freq(std::span<const tc::Match> matches) {
  FreqTable table;
  for (const tc::Match& match : matches) {
    if (!match.label.empty()) table.Add(match.label);
  }
  return table;
}

std::vector<LabelPair> CoOccur(std::span<const tc::Match> a,
                               std::span<const tc::Match> b, int span) {
  if (span < 1) {
    throw Error(ErrorCode::kInvalidArgument, "co-occur span must be >= 1");
  }
  // Index b by start offset so each a-match only visits its window.
  std::vector<std::size_t> order(b.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return b[x].start_idx < b[y].start_idx;
  });
  const auto width = static_cast<std::uint64_t>(span);
  std::vector<LabelPair> pairs;
  for (const tc::Match& ma : a) {
    if (ma.label.empty()) continue;
    std::uint64_t lo = ma.start_idx >= width ? ma.start_idx - width : 0;
    auto it = std::lower_bound(order.begin(), order.end(), lo,
                               [&](std::size_t i, std::uint64_t v) {
                                 return b[i].start_idx < v;
                               });
    for (; it != order.end() && b[*it].start_idx <= ma.start_idx + width; ++it) {
      const tc::Match& mb = b[*it];
      if (mb.label.empty() || mb.doc_id != ma.doc_id) continue;
      if (mb.start_idx == ma.start_idx && mb.end_idx == ma.end_idx) continue;
      pairs.emplace_back(ma.label, mb.label);
    }
  }
  return pairs;
}

std::vector<LabelPair> SkipGram(std::span<const tc::Match> matches, int n,
                                int span) {
  if (n != 2) {
    throw Error(ErrorCode::kUnsupported,
                "skip-gram supports n=2 only, got n=" + std::to_string(n));
  }
  if (span < 1) {
    throw Error(ErrorCode::kInvalidArgument, "skip-gram span must be >= 1");
  }
  const auto width = static_cast<std::uint64_t>(span);
  std::vector<LabelPair> pairs;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const tc::Match& first = matches[i];
    if (first.label.empty()) continue;
    for (std::size_t j = i + 1; j < matches.size(); ++j) {
      const tc::Match& later = matches[j];
      if (later.doc_id != first.doc_id) break;
      if (later.start_idx < first.start_idx) {
        throw Error(ErrorCode::kContract, "skip-gram input is not document-ordered");
      }
      if (later.start_idx - first.start_idx > width) break;
      if (later.label.empty()) continue;
      pairs.emplace_back(first.label, later.label);
    }
  }
  return pairs;
}

double MiScore(std::uint64_t ab, std::uint64_t a, std::uint64_t b,
               std::uint64_t corpus_size, int span, double k) {
  if (a == 0 || b == 0) {
    throw Error(ErrorCode::kContract, "MI of a pair with a zero marginal");
  }
  double observed = (static_cast<double>(ab) + k) * static_cast<double>(corpus_size);
  double expected = static_cast<double>(a) * static_cast<double>(b) *
                    static_cast<double>(span);
  return std::log2(observed / expected);
}

MiTable Mi(const PairTable& pairs, double k) {
  if (pairs.corpus_size == 0) {
    throw Error(ErrorCode::kContract, "MI needs a positive corpus size");
  }
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "smoothing constant must be >= 0");
  MiTable table;
  table.span = pairs.span;
  table.ordered = pairs.ordered;
  table.corpus_size = pairs.corpus_size;
  table.k = k;
  for (const auto& [pair, ab] : pairs.pair_counts) {
    auto a = pairs.marginals_a.find(pair.first);
    auto b = pairs.marginals_b.find(pair.second);
    if (a == pairs.marginals_a.end() || b == pairs.marginals_b.end()) {
      throw Error(ErrorCode::kContract,
                  "pair (" + pair.first + ", " + pair.second + ") lacks a marginal");
    }
    double mi = MiScore(ab, a->second, b->second, pairs.corpus_size, pairs.span, k);
    if (std::isfinite(mi)) table.values.emplace(pair, mi);
  }
  return table;
}

namespace {

template <typename Map>
void AddInto(Map& into, const Map& from) {
  for (const auto& [key, count] : from) into[key] += count;
}

}  // namespace

FreqTable Merge(const FreqTable& t1, const FreqTable& t2) {
  FreqTable out = t1;
  AddInto(out.counts, t2.counts);
  out.total += t2.total;
  return out;
}

PairTable Merge(const PairTable& t1, const PairTable& t2) {
  if (t1.span != t2.span || t1.ordered != t2.ordered) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot merge pair tables with different span or orientation");
  }
  PairTable out = t1;
  AddInto(out.pair_counts, t2.pair_counts);
  AddInto(out.marginals_a, t2.marginals_a);
  AddInto(out.marginals_b, t2.marginals_b);
  out.corpus_size += t2.corpus_size;
  return out;
}

PairTable Prune(const PairTable& table, std::uint64_t min_pair_count,
                std::uint64_t min_label_count) {
  PairTable out(table.span, table.ordered);
  out.corpus_size = table.corpus_size;
  auto count_of = [](const std::map<std::string, std::uint64_t>& m,
                     const std::string& key) -> std::uint64_t {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
  };
  for (const auto& [pair, count] : table.pair_counts) {
    if (count < min_pair_count) continue;
    std::uint64_t a = count_of(table.marginals_a, pair.first);
    std::uint64_t b = count_of(table.marginals_b, pair.second);
    if (a < min_label_count || b < min_label_count) continue;
    out.pair_counts.emplace(pair, count);
    out.marginals_a.emplace(pair.first, a);
    out.marginals_b.emplace(pair.second, b);
  }
  return out;
}

}  // namespace akb
