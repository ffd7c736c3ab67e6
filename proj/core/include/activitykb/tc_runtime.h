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

#ifndef ACTIVITYKB_TC_RUNTIME_H_
#define ACTIVITYKB_TC_RUNTIME_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "activitykb/corpus.h"
#include "activitykb/tc_lang.h"

namespace akb::tc {

enum class ComponentRole { kAnchor, kHead, kOther };

// Label emitted by one tracked component of a pair-emitting rule.
struct SubLabel {
  std::string rule;
  std::string label;
  ComponentRole role = ComponentRole::kOther;
  std::vector<std::uint32_t> kept;  // sentence offsets of the emitted tokens

  bool operator==(const SubLabel&) const = default;
};

struct Match {
  std::string rule;
  std::string doc_id;
  std::uint32_t sent_id = 0;
  std::uint64_t start_idx = 0;  // inclusive
  std::uint64_t end_idx = 0;    // exclusive
  std::string label;
  std::vector<std::uint32_t> kept;  // sentence offsets of the emitted tokens
  bool tracked = false;             // pattern has pair-emitting components
  std::vector<SubLabel> sublabels;  // matched components only, in order

  bool operator==(const Match&) const = default;
};

// Result of one anchored attempt, in sentence offsets.
struct AnchoredMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<std::uint32_t> kept;
  std::vector<SubLabel> sublabels;
};

namespace internal {
struct Graph;

struct Component {
  int node = -1;  // rule-reference node inside the root sequence
  std::string rule;
  ComponentRole role = ComponentRole::kOther;
};
}  // namespace internal

// Executable form of one rule. Cheap to copy; the node graph is shared and
// immutable, so a pattern may be used from several threads at once.
class PatternFactory;

class CompiledPattern {
 public:
  const std::string& rule() const { return rule_; }
  bool can_match_empty() const { return nullable_; }
  bool tracked() const { return !tracked_rules_.empty(); }
  // Rules referenced by the tracked components, e.g. {np, vp} for svo.
  const std::vector<std::string>& tracked_rules() const { return tracked_rules_; }

  // Greedy, committed match anchored at `pos`.
  std::optional<AnchoredMatch> MatchAt(std::span<const TaggedToken> sentence,
                                       std::size_t pos) const;

 private:
  friend class PatternFactory;

  std::shared_ptr<const internal::Graph> graph_;
  int root_ = -1;
  std::string rule_;
  bool nullable_ = false;
  std::vector<std::string> tracked_rules_;
  std::vector<internal::Component> components_;
};

CompiledPattern CompileRule(const CheckedProgram& program, std::string_view rule,
                            std::vector<std::string>* warnings = nullptr);

struct CompiledProgram {
  std::vector<CompiledPattern> patterns;  // rules used by the pipeline
  std::vector<std::string> warnings;

  const CompiledPattern* Find(std::string_view rule) const;
};

CompiledProgram Compile(const CheckedProgram& program);

// Leftmost, non-overlapping scan of one sentence. Empty matches are dropped
// and the scan advances one token past them.
std::vector<Match> ScanSentence(const CompiledPattern& pattern,
                                std::span<const TaggedToken> sentence);

std::string JoinLemmas(std::span<const TaggedToken> sentence,
                       std::span<const std::uint32_t> kept);

// (anchor label, head label) for every matched anchor component. Throws
// Error(kContract) when the match has no tracked components.
std::vector<std::pair<std::string, std::string>> EmitPairs(const Match& match);

}  // namespace akb::tc

#endif  // ACTIVITYKB_TC_RUNTIME_H_
