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

#include "activitykb/vsm.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "activitykb/errors.h"

namespace akb {
namespace {

std::vector<ScoredResult> TopK(std::vector<ScoredResult> results, std::size_t top_k) {
  std::sort(results.begin(), results.end(), RankBefore);
  if (results.size() > top_k) results.resize(top_k);
  return results;
}

double Clamp(double score) { return std::min(score, 1.0); }

}  // namespace

const char* ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kObjectActivity:
      return "object-activity";
    case ModelKind::kObjectAffordance:
      return "object-affordance";
    case ModelKind::kActivityPrediction:
      return "activity-prediction";
  }
  return "unknown";
}

bool RankBefore(const ScoredResult& a, const ScoredResult& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.frequency != b.frequency) return a.frequency > b.frequency;
  return a.label < b.label;
}

VectorModel VectorModel::Build(const MiTable& mi, const FreqTable& freq, ModelKind kind) {
  for (const auto& [pair, value] : mi.values) {
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-finite MI for (" + pair.first + ", " + pair.second + ")");
    }
  }
  VectorModel model;
  model.kind_ = kind;
  std::map<std::string, std::map<std::string, double>> by_row;
  std::map<std::string, std::uint32_t> dims;
  for (const auto& [pair, value] : mi.values) {
    if (value <= 0.0) continue;
    by_row[pair.second][pair.first] = value;
    dims.emplace(pair.first, 0);
  }
  for (auto& [label, index] : dims) {
    index = static_cast<std::uint32_t>(model.dims_.size());
    model.dim_index_.emplace(label, index);
    model.dims_.push_back(label);
  }
  for (const auto& [label, values] : by_row) {
    Row row;
    row.label = label;
    double sum = 0.0;
    for (const auto& [dim, value] : values) {
      row.entries.emplace_back(dims.at(dim), value);
      sum += value * value;
    }
    row.norm = std::sqrt(sum);
    row.frequency = freq.Count(label);
    model.row_index_.emplace(label, static_cast<std::uint32_t>(model.rows_.size()));
    model.rows_.push_back(std::move(row));
  }
  return model;
}

const VectorModel::Row* VectorModel::FindRow(std::string_view label) const {
  auto it = row_index_.find(std::string(label));
  return it == row_index_.end() ? nullptr : &rows_[it->second];
}

int VectorModel::DimIndex(std::string_view label) const {
  auto it = dim_index_.find(std::string(label));
  return it == dim_index_.end() ? -1 : static_cast<int>(it->second);
}

const VectorModel::Row& VectorModel::RequireRow(std::string_view label) const {
  const Row* row = FindRow(label);
  if (row == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown " + std::string(ModelKindName(kind_)) +
                                          " row: " + std::string(label));
  }
  return *row;
}

std::vector<std::uint32_t> VectorModel::QueryDims(std::span<const std::string> terms) const {
  if (terms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty query");
  std::vector<std::uint32_t> dims;
  std::vector<std::string> unknown;
  for (const std::string& term : terms) {
    int index = DimIndex(term);
    if (index < 0) {
      unknown.push_back(term);
    } else {
      dims.push_back(static_cast<std::uint32_t>(index));
    }
  }
  if (dims.empty()) {
    std::string names;
    for (const std::string& term : unknown) {
      if (!names.empty()) names += ", ";
      names += term;
    }
    throw Error(ErrorCode::kNotFound, "no known terms: " + names);
  }
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

double VectorModel::QueryScore(const Row& row, const std::vector<std::uint32_t>& dims) const {
  // Both sides ascending: a merge join keeps the summation order fixed.
  double dot = 0.0;
  auto d = dims.begin();
  for (const auto& [dim, value] : row.entries) {
    while (d != dims.end() && *d < dim) ++d;
    if (d == dims.end()) break;
    if (*d == dim) dot += value;
  }
  if (dot == 0.0) return 0.0;
  return Clamp(dot / (std::sqrt(static_cast<double>(dims.size())) * row.norm));
}

std::vector<ScoredResult> VectorModel::Query(std::span<const std::string> terms,
                                             std::size_t top_k) const {
  if (top_k == 0) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
  std::vector<std::uint32_t> dims = QueryDims(terms);
  std::vector<ScoredResult> results;
  for (const Row& row : rows_) {
    double score = QueryScore(row, dims);
    if (score > 0.0) results.push_back({row.label, score, row.frequency});
  }
  return TopK(std::move(results), top_k);
}

double VectorModel::ScoreSingle(std::span<const std::string> terms,
                                std::string_view target) const {
  std::vector<std::uint32_t> dims = QueryDims(terms);
  const Row* row = FindRow(target);
  return row == nullptr ? 0.0 : QueryScore(*row, dims);
}

double VectorModel::Cosine(std::string_view a, std::string_view b) const {
  const Row& ra = RequireRow(a);
  const Row& rb = RequireRow(b);
  double dot = 0.0;
  auto i = ra.entries.begin();
  auto j = rb.entries.begin();
  while (i != ra.entries.end() && j != rb.entries.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  if (dot == 0.0) return 0.0;
  return Clamp(dot / (ra.norm * rb.norm));
}

std::vector<ScoredResult> VectorModel::Neighbors(std::string_view row_label,
                                                 std::size_t top_k) const {
  if (top_k == 0) throw Error(ErrorCode::kInvalidArgument, "top_k must be >= 1");
  const Row& self = RequireRow(row_label);
  std::vector<ScoredResult> results;
  for (const Row& row : rows_) {
    if (&row == &self) continue;
    double score = Cosine(self.label, row.label);
    if (score > 0.0) results.push_back({row.label, score, row.frequency});
  }
  return TopK(std::move(results), top_k);
}

}  // namespace akb
