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

#ifndef ACTIVITYKB_TESTS_ORACLE_MATCHER_ORACLE_H_
#define ACTIVITYKB_TESTS_ORACLE_MATCHER_ORACLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "activitykb/corpus.h"
#include "activitykb/tc_lang.h"

namespace akb::oracle {

// Consumed sentence offsets, each flagged kept (true) or dropped by Minus.
using Consumed = std::vector<std::pair<std::uint32_t, bool>>;

struct OracleMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<std::uint32_t> kept;
  std::string label;
  // Labels of matched pair components, in order: (rule, label, role) where
  // role is 'a' (anchor), 'h' (head) or 'o'.
  std::vector<std::tuple<std::string, std::string, char>> components;

  bool operator==(const OracleMatch&) const = default;
};

// Greedy, committed evaluation written directly over the AST: each
// (expression, position) result is computed once into a table. Ordered
// choice, greedy repetition that stops when an iteration consumes nothing,
// Minus over a token atom optional, over anything else required.
class CommittedMatcher {
 public:
  CommittedMatcher(const tc::TcProgram& program, std::span<const TaggedToken> sentence)
      : program_(program), sentence_(sentence) {}

  struct Result {
    std::size_t end = 0;
    Consumed consumed;
  };

  const std::optional<Result>& Eval(const tc::PatternExpr& expr, std::size_t pos);

 private:
  std::optional<Result> Compute(const tc::PatternExpr& expr, std::size_t pos);

  const tc::TcProgram& program_;
  std::span<const TaggedToken> sentence_;
  std::map<std::pair<const tc::PatternExpr*, std::size_t>, std::optional<Result>> table_;
};

// Leftmost non-overlapping scan of `rule` over one sentence, empty matches
// skipped. Object rules have leading determiners stripped from labels.
std::vector<OracleMatch> OracleScan(const tc::TcProgram& program, const std::string& rule,
                                    std::span<const TaggedToken> sentence,
                                    const std::set<std::string>& object_rules = {});

// Every parse of `expr` from `pos`, under nondeterministic choice at every
// Alt/Opt/Plus/optional-Minus. Distinct (end, consumed) pairs only.
struct ParsePath {
  std::size_t end = 0;
  Consumed consumed;

  auto operator<=>(const ParsePath&) const = default;
};
std::vector<ParsePath> EnumeratePaths(const tc::TcProgram& program, const tc::PatternExpr& expr,
                                      std::span<const TaggedToken> sentence, std::size_t pos);

}  // namespace akb::oracle

#endif  // ACTIVITYKB_TESTS_ORACLE_MATCHER_ORACLE_H_
