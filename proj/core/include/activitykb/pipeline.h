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

#ifndef ACTIVITYKB_PIPELINE_H_
#define ACTIVITYKB_PIPELINE_H_

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "activitykb/aggregate.h"
#include "activitykb/corpus.h"
#include "activitykb/tc_lang.h"
#include "activitykb/tc_runtime.h"

namespace akb {

struct PipelineOptions {
  // Labels of matches (and tracked components) of these rules lose their
  // leading determiner tokens, so "the backpack" counts as "backpack".
  std::set<std::string> object_rules;
};

// Strips leading DET tokens from an emitted token list.
std::string ObjectLabel(std::span<const TaggedToken> sentence,
                        std::span<const std::uint32_t> kept);

// Counts produced by a pipeline before any MI transform. Exactly one of the
// two tables is meaningful, depending on `pairs`.
struct PipelineCounts {
  bool pairs = false;
  FreqTable freq;
  PairTable pair_table;
  std::uint64_t corpus_size = 0;

  void MergeFrom(const PipelineCounts& other);
  bool operator==(const PipelineCounts&) const = default;
};

using PipelineResult = std::variant<FreqTable, PairTable, MiTable>;

// Runs one checked TC program document by document. Instances are not
// thread-safe; give each shard its own runner and merge the counts.
class PipelineRunner {
 public:
  explicit PipelineRunner(std::shared_ptr<const tc::CheckedProgram> program,
                          PipelineOptions options = {});

  void ProcessDocument(const Document& doc);
  void ProcessDocument(std::span<const TaggedToken> tokens);

  // All matches of `rule` in a document, in document order, with object
  // normalization applied.
  std::vector<tc::Match> ScanDocument(const std::string& rule,
                                      std::span<const TaggedToken> tokens) const;

  const PipelineCounts& counts() const { return counts_; }
  PipelineCounts& mutable_counts() { return counts_; }
  const tc::CheckedProgram& program() const { return *program_; }
  const std::vector<std::string>& warnings() const { return compiled_.warnings; }

 private:
  void Accumulate(const tc::AggExpr& freq_arg,
                  std::span<const TaggedToken> tokens);

  std::shared_ptr<const tc::CheckedProgram> program_;
  tc::CompiledProgram compiled_;
  PipelineOptions options_;
  PipelineCounts counts_;
};

// Applies the program's outer stage to accumulated counts: a freq pipeline
// yields its table, an MI pipeline prunes pairs below `min_count` and
// applies MI with smoothing `k`.
PipelineResult FinishPipeline(const tc::CheckedProgram& program,
                              const PipelineCounts& counts, double k,
                              std::uint64_t min_count = 1);

}  // namespace akb

#endif  // ACTIVITYKB_PIPELINE_H_
