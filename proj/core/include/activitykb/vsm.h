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

#ifndef ACTIVITYKB_VSM_H_
#define ACTIVITYKB_VSM_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "activitykb/aggregate.h"

namespace akb {

enum class ModelKind { kObjectActivity, kObjectAffordance, kActivityPrediction };

const char* ModelKindName(ModelKind kind);

struct ScoredResult {
  std::string label;
  double score = 0.0;
  std::uint64_t frequency = 0;

  bool operator==(const ScoredResult&) const = default;
};

inline constexpr std::size_t kDefaultTopK = 20;

// Sparse rows of positive MI values. A row is the second label of each pair
// (activity, affordance, or later activity); its dimensions are the first
// labels it co-occurs with. Immutable once built, so concurrent queries are
// safe.
class VectorModel {
 public:
  struct Row {
    std::string label;
    // (dimension index, value > 0), ascending by index.
    std::vector<std::pair<std::uint32_t, double>> entries;
    double norm = 0.0;
    std::uint64_t frequency = 0;
  };

  VectorModel() = default;

  // Values are max(MI, 0); zero values are omitted and rows left without any
  // dimension are dropped. Rows missing from `freq` get frequency 0.
  static VectorModel Build(const MiTable& mi, const FreqTable& freq, ModelKind kind);

  ModelKind kind() const { return kind_; }
  const std::vector<std::string>& dim_vocab() const { return dims_; }
  const std::vector<Row>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  const Row* FindRow(std::string_view label) const;
  // -1 when the label is not a dimension.
  int DimIndex(std::string_view label) const;

  // Cosine between the 0/1 query vector over the known terms and every row.
  // Unknown terms are ignored; zero scores are not returned. Throws
  // Error(kNotFound) listing the terms when none is known, and
  // Error(kInvalidArgument) when top_k is 0 or terms is empty.
  std::vector<ScoredResult> Query(std::span<const std::string> terms,
                                  std::size_t top_k = kDefaultTopK) const;

  // Cosine of one row for the query; 0 when the row does not exist.
  double ScoreSingle(std::span<const std::string> terms, std::string_view target) const;

  // Rows most similar to `row_label`, itself excluded. Throws
  // Error(kNotFound) for an unknown row.
  std::vector<ScoredResult> Neighbors(std::string_view row_label,
                                      std::size_t top_k = kDefaultTopK) const;

  // Cosine between two rows. Throws Error(kNotFound) for unknown rows.
  double Cosine(std::string_view a, std::string_view b) const;

 private:
  // Sorted, de-duplicated query dimensions; throws when none is known.
  std::vector<std::uint32_t> QueryDims(std::span<const std::string> terms) const;
  double QueryScore(const Row& row, const std::vector<std::uint32_t>& dims) const;
  const Row& RequireRow(std::string_view label) const;

  ModelKind kind_ = ModelKind::kObjectActivity;
  std::vector<std::string> dims_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::uint32_t> dim_index_;
  std::unordered_map<std::string, std::uint32_t> row_index_;
};

// Score descending, then frequency descending, then label ascending.
bool RankBefore(const ScoredResult& a, const ScoredResult& b);

}  // namespace akb

#endif  // ACTIVITYKB_VSM_H_
