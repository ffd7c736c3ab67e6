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

#include "activitykb/pipeline.h"

#include <utility>

#include "activitykb/errors.h"

namespace akb {
namespace {

const tc::AggExpr& FreqStage(const tc::CheckedProgram& program) {
  const tc::AggExpr& top = program.program.pipeline;
  return top.kind == tc::AggKind::kMi ? top.inner.front() : top;
}

}  // namespace

std::string ObjectLabel(std::span<const TaggedToken> sentence,
                        std::span<const std::uint32_t> kept) {
  std::size_t first = 0;
  while (first < kept.size() && sentence[kept[first]].pos == PosTag::kDet) ++first;
  return tc::JoinLemmas(sentence, kept.subspan(first));
}

void PipelineCounts::MergeFrom(const PipelineCounts& other) {
  freq = Merge(freq, other.freq);
  pair_table = Merge(pair_table, other.pair_table);
  corpus_size += other.corpus_size;
}

PipelineRunner::PipelineRunner(std::shared_ptr<const tc::CheckedProgram> program,
                               PipelineOptions options)
    : program_(std::move(program)),
      compiled_(tc::Compile(*program_)),
      options_(std::move(options)) {
  const tc::AggExpr& stage = FreqStage(*program_);
  counts_.pairs = program_->output == tc::StreamKind::kPairTable ||
                  program_->output == tc::StreamKind::kMiTable;
  if (!stage.inner.empty()) {
    const tc::AggExpr& source = stage.inner.front();
    counts_.pair_table = PairTable(source.span, source.kind == tc::AggKind::kSkipGram);
  } else {
    // Syntactic pairs from one match: adjacent by construction.
    counts_.pair_table = PairTable(1, false);
  }
}

std::vector<tc::Match> PipelineRunner::ScanDocument(
    const std::string& rule, std::span<const TaggedToken> tokens) const {
  const tc::CompiledPattern* pattern = compiled_.Find(rule);
  if (pattern == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "rule '" + rule + "' is not compiled");
  }
  const bool object = options_.object_rules.count(rule) != 0;
  std::vector<tc::Match> out;
  for (std::span<const TaggedToken> sentence : Sentences(tokens)) {
    for (tc::Match& match : tc::ScanSentence(*pattern, sentence)) {
      if (object) match.label = ObjectLabel(sentence, match.kept);
      for (tc::SubLabel& sub : match.sublabels) {
        if (options_.object_rules.count(sub.rule) != 0) {
          sub.label = ObjectLabel(sentence, sub.kept);
        }
      }
      out.push_back(std::move(match));
    }
  }
  return out;
}

void PipelineRunner::ProcessDocument(const Document& doc) {
  ProcessDocument(std::span<const TaggedToken>(doc.tokens));
}

void PipelineRunner::ProcessDocument(std::span<const TaggedToken> tokens) {
  counts_.corpus_size += tokens.size();
  counts_.pair_table.corpus_size += tokens.size();
  Accumulate(FreqStage(*program_), tokens);
}

void PipelineRunner::Accumulate(const tc::AggExpr& stage,
                                std::span<const TaggedToken> tokens) {
  PairTable& table = counts_.pair_table;
  if (stage.inner.empty()) {
    std::vector<tc::Match> matches = ScanDocument(stage.rule, tokens);
    if (!counts_.pairs) {
      for (const tc::Match& match : matches) {
        if (!match.label.empty()) counts_.freq.Add(match.label);
      }
      return;
    }
    for (const tc::Match& match : matches) {
      std::vector<LabelPair> pairs = tc::EmitPairs(match);
      if (pairs.empty()) continue;
      for (const LabelPair& pair : pairs) {
        table.AddPair(pair);
        ++table.marginals_a[pair.first];
      }
      ++table.marginals_b[pairs.front().second];
    }
    return;
  }
  const tc::AggExpr& source = stage.inner.front();
  auto count_labels = [](const std::vector<tc::Match>& matches,
                         std::map<std::string, std::uint64_t>& into) {
    for (const tc::Match& match : matches) {
      if (!match.label.empty()) ++into[match.label];
    }
  };
  std::vector<LabelPair> pairs;
  if (source.kind == tc::AggKind::kCoOccur) {
    std::vector<tc::Match> a = ScanDocument(source.rule, tokens);
    std::vector<tc::Match> b = source.rule_b == source.rule
                                   ? a
                                   : ScanDocument(source.rule_b, tokens);
    count_labels(a, table.marginals_a);
    count_labels(b, table.marginals_b);
    pairs = CoOccur(a, b, source.span);
  } else {
    std::vector<tc::Match> matches = ScanDocument(source.rule, tokens);
    count_labels(matches, table.marginals_a);
    count_labels(matches, table.marginals_b);
    pairs = SkipGram(matches, source.n, source.span);
  }
  for (const LabelPair& pair : pairs) table.AddPair(pair);
}

PipelineResult FinishPipeline(const tc::CheckedProgram& program,
                              const PipelineCounts& counts, double k,
                              std::uint64_t min_count) {
  switch (program.output) {
    case tc::StreamKind::kFreqTable:
      return counts.freq;
    case tc::StreamKind::kPairTable:
      return counts.pair_table;
    case tc::StreamKind::kMiTable:
      if (counts.pair_table.corpus_size == 0) return MiTable{};
      return Mi(Prune(counts.pair_table, min_count), k);
    default:
      throw Error(ErrorCode::kContract, "pipeline has no table output");
  }
}

}  // namespace akb
