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

#include "oracle/mi_oracle.h"

#include <cmath>
#include <cstdlib>
#include <span>

#include "oracle/matcher_oracle.h"

namespace akb::oracle {
namespace {

struct DocMatch {
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  std::string label;
  std::vector<std::tuple<std::string, std::string, char>> components;
};

std::vector<DocMatch> ScanDoc(const tc::TcProgram& program, const std::string& rule,
                              const Document& doc, const std::set<std::string>& object_rules) {
  std::vector<DocMatch> out;
  std::size_t i = 0;
  const std::vector<TaggedToken>& t = doc.tokens;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j].sent_id == t[i].sent_id) ++j;
    std::span<const TaggedToken> sentence(t.data() + i, j - i);
    for (const OracleMatch& m : OracleScan(program, rule, sentence, object_rules)) {
      out.push_back({sentence[m.begin].token_idx, sentence[m.end - 1].token_idx + 1, m.label,
                     m.components});
    }
    i = j;
  }
  return out;
}

std::uint64_t Distance(std::uint64_t x, std::uint64_t y) { return x > y ? x - y : y - x; }

}  // namespace

double OracleMiScore(std::uint64_t ab, std::uint64_t a, std::uint64_t b, std::uint64_t n,
                     int span, double k) {
  double num = (static_cast<double>(ab) + k) * static_cast<double>(n);
  double den = static_cast<double>(a) * static_cast<double>(b) * static_cast<double>(span);
  return std::log(num / den) / std::log(2.0);
}

OracleTables OracleMi(const tc::TcProgram& program, const std::vector<Document>& docs,
                      const std::set<std::string>& object_rules, double k,
                      std::uint64_t min_count) {
  OracleTables out;
  const tc::AggExpr& freq = program.pipeline.inner.front();
  for (const Document& doc : docs) out.corpus_size += doc.tokens.size();

  if (freq.inner.empty()) {
    out.span = 1;
    for (const Document& doc : docs) {
      for (const DocMatch& m : ScanDoc(program, freq.rule, doc, object_rules)) {
        std::string head;
        for (const auto& [rule, label, role] : m.components) {
          if (role == 'h') head = label;
        }
        if (head.empty()) continue;
        bool any = false;
        for (const auto& [rule, label, role] : m.components) {
          if (role != 'a' || label.empty()) continue;
          ++out.pairs[{label, head}];
          ++out.marginals_a[label];
          any = true;
        }
        if (any) ++out.marginals_b[head];
      }
    }
  } else {
    const tc::AggExpr& source = freq.inner.front();
    out.span = source.span;
    const auto span = static_cast<std::uint64_t>(source.span);
    for (const Document& doc : docs) {
      if (source.kind == tc::AggKind::kCoOccur) {
        std::vector<DocMatch> a = ScanDoc(program, source.rule, doc, object_rules);
        std::vector<DocMatch> b = ScanDoc(program, source.rule_b, doc, object_rules);
        for (const DocMatch& x : a) {
          if (!x.label.empty()) ++out.marginals_a[x.label];
        }
        for (const DocMatch& y : b) {
          if (!y.label.empty()) ++out.marginals_b[y.label];
        }
        for (const DocMatch& x : a) {
          for (const DocMatch& y : b) {
            if (x.label.empty() || y.label.empty()) continue;
            if (x.start == y.start && x.end == y.end) continue;
            if (Distance(x.start, y.start) <= span) ++out.pairs[{x.label, y.label}];
          }
        }
      } else {
        std::vector<DocMatch> m = ScanDoc(program, source.rule, doc, object_rules);
        for (const DocMatch& x : m) {
          if (x.label.empty()) continue;
          ++out.marginals_a[x.label];
          ++out.marginals_b[x.label];
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
          for (std::size_t j = 0; j < m.size(); ++j) {
            if (j <= i || m[i].label.empty() || m[j].label.empty()) continue;
            if (m[j].start - m[i].start <= span) ++out.pairs[{m[i].label, m[j].label}];
          }
        }
      }
    }
  }
  for (const auto& [pair, count] : out.pairs) {
    if (count < min_count) continue;
    out.mi[pair] = OracleMiScore(count, out.marginals_a.at(pair.first),
                                 out.marginals_b.at(pair.second), out.corpus_size, out.span, k);
  }
  return out;
}

}  // namespace akb::oracle
