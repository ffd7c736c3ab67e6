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

#ifndef ACTIVITYKB_TC_LANG_H_
#define ACTIVITYKB_TC_LANG_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "activitykb/corpus.h"
#include "activitykb/errors.h"

namespace akb::tc {

struct SourceLoc {
  int line = 1;
  int column = 1;
};

enum class DiagnosticKind {
  kSyntax,
  kUndefinedRule,
  kCyclicReference,
  kMissingPipeline,
  kDuplicatePipeline,
  kDuplicateRule,
  kReservedName,
  kTypeError,
  kUnsupported,
  kInvalidArgument,
};

const char* DiagnosticKindName(DiagnosticKind kind);

// A TC diagnostic. what() reads "line:column: message".
class TcError : public Error {
 public:
  TcError(DiagnosticKind kind, SourceLoc loc, const std::string& message);

  DiagnosticKind kind() const { return kind_; }
  SourceLoc loc() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  DiagnosticKind kind_;
  SourceLoc loc_;
  std::string detail_;
};

enum class PatternKind {
  kLiteral,
  kPosClass,
  kSeq,
  kAlt,
  kOpt,
  kPlus,
  kMinus,
  kRuleRef,
};

struct PatternExpr {
  PatternKind kind = PatternKind::kLiteral;
  std::string text;  // literal text, or the referenced rule name
  PosTag pos = PosTag::kX;
  std::vector<PatternExpr> children;
  int rule_index = -1;  // resolved by CheckProgram
  SourceLoc loc;

  static PatternExpr Literal(std::string text);
  static PatternExpr Pos(PosTag tag);
  static PatternExpr Ref(std::string name);
  static PatternExpr Seq(std::vector<PatternExpr> items);
  static PatternExpr Alt(std::vector<PatternExpr> items);
  static PatternExpr Opt(PatternExpr inner);
  static PatternExpr Plus(PatternExpr inner);
  // Minus(Minus(x)) collapses to Minus(x).
  static PatternExpr Minus(PatternExpr inner);

  // Structural equality: locations and resolved indices are ignored.
  friend bool operator==(const PatternExpr& a, const PatternExpr& b);
};

enum class AggKind { kFreq, kCoOccur, kSkipGram, kMi };

struct AggExpr {
  AggKind kind = AggKind::kFreq;
  // kFreq over a rule uses `rule`; kFreq over a nested aggregation and kMi
  // hold exactly one element here.
  std::vector<AggExpr> inner;
  std::string rule;    // freq(rule), skip-gram(rule, ...), co-occur(rule, _)
  std::string rule_b;  // co-occur(_, rule_b, ...)
  int n = 0;
  int span = 0;
  SourceLoc loc;

  friend bool operator==(const AggExpr& a, const AggExpr& b);
};

struct RuleDef {
  std::string name;
  PatternExpr expr;
  SourceLoc loc;
};

struct TcProgram {
  std::vector<RuleDef> rules;  // definition order
  AggExpr pipeline;

  const RuleDef* FindRule(std::string_view name) const;
  int RuleIndex(std::string_view name) const;

  friend bool operator==(const TcProgram& a, const TcProgram& b);
};

// What a pipeline (or one of its stages) produces.
enum class StreamKind { kLabels, kPairs, kFreqTable, kPairTable, kMiTable };

// The top-level sequence components of a pair-emitting rule like
// `svo = np vp np?`: plain or optional references to exactly two rules. The
// first component's rule is the anchor; the first component naming the
// other rule is the head. Every matched anchor-rule component pairs with it.
struct PairShape {
  std::vector<std::size_t> components;  // indices into the Seq children
  std::vector<std::string> component_rules;
  std::string anchor_rule;
  std::size_t head = 0;  // index into `components`
};

std::optional<PairShape> AnalyzePairShape(const PatternExpr& expr);

struct CheckedProgram {
  TcProgram program;
  StreamKind output = StreamKind::kFreqTable;
};

// Parses and resolves: syntax, undefined references, reference cycles and
// pipeline presence are all diagnosed here.
TcProgram ParseProgram(std::string_view source);

// Resolves rule indices, normalizes Minus nesting and type-checks the pipeline.
CheckedProgram CheckProgram(TcProgram program);

inline CheckedProgram ParseAndCheck(std::string_view source) {
  return CheckProgram(ParseProgram(source));
}

std::string FormatPattern(const PatternExpr& expr);
std::string FormatPipeline(const AggExpr& agg);
std::string FormatProgram(const TcProgram& program);

bool IsAggregatorName(std::string_view name);

}  // namespace akb::tc

#endif  // ACTIVITYKB_TC_LANG_H_
