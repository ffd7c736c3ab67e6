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

#include "oracle/harness.h"

#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>
#include <variant>
#include <vector>

#include "activitykb/aggregate.h"
#include "activitykb/errors.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/pipeline.h"
#include "activitykb/tc_lang.h"
#include "activitykb/tc_runtime.h"
#include "activitykb/vsm.h"
#include "oracle/cosine_oracle.h"
#include "oracle/matcher_oracle.h"
#include "oracle/mi_oracle.h"
#include "oracle/random_gen.h"

namespace akb::oracle {
namespace {

std::string Describe(const tc::TcProgram& program, std::span<const TaggedToken> sentence) {
  std::ostringstream out;
  out << tc::FormatProgram(program) << "| sentence:";
  for (const TaggedToken& t : sentence) out << ' ' << t.lemma << '/' << PosTagName(t.pos);
  return out.str();
}

char RoleChar(tc::ComponentRole role) {
  switch (role) {
    case tc::ComponentRole::kAnchor:
      return 'a';
    case tc::ComponentRole::kHead:
      return 'h';
    case tc::ComponentRole::kOther:
      break;
  }
  return 'o';
}

OracleMatch FromEngine(const tc::Match& m) {
  OracleMatch out;
  out.begin = static_cast<std::size_t>(m.start_idx);
  out.end = static_cast<std::size_t>(m.end_idx);
  out.kept = m.kept;
  out.label = m.label;
  for (const tc::SubLabel& s : m.sublabels) {
    out.components.emplace_back(s.rule, s.label, RoleChar(s.role));
  }
  return out;
}

// A random program that passes the checker, plus its compiled main rule.
struct RandomCase {
  tc::CheckedProgram checked;
  tc::CompiledPattern main;
};

RandomCase NextCase(Rng& rng) {
  for (;;) {
    int depth = 1 + static_cast<int>(Uniform(rng, 3));
    try {
      RandomCase c{tc::CheckProgram(RandomProgram(rng, depth)), {}};
      c.main = tc::CompileRule(c.checked, "main");
      return c;
    } catch (const tc::TcError&) {
      // The generator may emit programs the checker rejects; draw again.
    }
  }
}

const tc::PatternExpr& RuleExpr(const tc::TcProgram& program, const std::string& name) {
  for (const tc::RuleDef& def : program.rules) {
    if (def.name == name) return def.expr;
  }
  throw Error(ErrorCode::kContract, "no rule " + name);
}

void Fail(Agreement& report, const std::string& what) {
  if (report.first_failure.empty()) report.first_failure = what;
}

constexpr int kMiSpan = 50;
constexpr double kMiK = 10.0;
constexpr std::uint64_t kMiMinCount = 2;

struct MiScript {
  std::string_view script_template;
  std::set<std::string> object_rules;
};

}  // namespace

Agreement CheckCombinatorAgreement(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  Agreement report;
  for (std::size_t i = 0; i < cases; ++i) {
    RandomCase c = NextCase(rng);
    std::vector<TaggedToken> sentence = RandomSentence(rng, 8);
    std::vector<OracleMatch> want = OracleScan(c.checked.program, "main", sentence);
    std::vector<OracleMatch> got;
    for (const tc::Match& m : tc::ScanSentence(c.main, sentence)) got.push_back(FromEngine(m));
    ++report.cases;
    report.comparisons += want.size();
    if (got == want) {
      ++report.agreed;
    } else {
      Fail(report, "case " + std::to_string(i) + ": " + Describe(c.checked.program, sentence));
    }
  }
  return report;
}

Agreement CheckMinusSoundness(std::uint64_t seed, std::size_t cases) {
  Rng rng(seed);
  Agreement report;
  for (std::size_t i = 0; i < cases; ++i) {
    RandomCase c = NextCase(rng);
    std::vector<TaggedToken> sentence = RandomSentence(rng, 8);
    const tc::PatternExpr& body = RuleExpr(c.checked.program, "main");
    bool ok = true;
    for (const tc::Match& m : tc::ScanSentence(c.main, sentence)) {
      ++report.comparisons;
      const auto begin = static_cast<std::size_t>(m.start_idx);
      const auto end = static_cast<std::size_t>(m.end_idx);
      bool found = false;
      for (const ParsePath& path : EnumeratePaths(c.checked.program, body, sentence, begin)) {
        if (path.end != end) continue;
        std::vector<std::uint32_t> kept;
        std::set<std::uint32_t> dropped;
        for (const auto& [offset, keep] : path.consumed) {
          if (keep) {
            kept.push_back(offset);
          } else {
            dropped.insert(offset);
          }
        }
        if (kept != m.kept) continue;
        found = true;
        for (std::uint32_t k : m.kept) found = found && dropped.count(k) == 0;
        if (found) break;
      }
      if (!found || m.label != tc::JoinLemmas(sentence, m.kept)) ok = false;
    }
    ++report.cases;
    if (ok) {
      ++report.agreed;
    } else {
      Fail(report, "case " + std::to_string(i) + ": " + Describe(c.checked.program, sentence));
    }
  }
  return report;
}

Agreement CheckMiAgreement(std::uint64_t seed, std::size_t corpora, std::size_t max_tokens,
                           double tolerance) {
  const std::vector<MiScript> scripts = {
      {scripts::kActivityObjectTemplate, {"np"}},
      {scripts::kObjectAffordanceTemplate, {"np"}},
      {scripts::kActivityActivityTemplate, {}},
  };
  std::vector<std::shared_ptr<const tc::CheckedProgram>> programs;
  for (const MiScript& s : scripts) {
    programs.push_back(std::make_shared<const tc::CheckedProgram>(
        tc::ParseAndCheck(scripts::Instantiate(s.script_template, kMiSpan))));
  }

  Rng rng(seed);
  Agreement report;
  for (std::size_t i = 0; i < corpora; ++i) {
    std::vector<Document> docs = RandomCorpus(rng, max_tokens);
    bool ok = true;
    std::string why;
    for (std::size_t s = 0; s < scripts.size(); ++s) {
      PipelineRunner runner(programs[s], {scripts[s].object_rules});
      for (const Document& doc : docs) runner.ProcessDocument(doc);
      const PairTable& pairs = runner.counts().pair_table;
      MiTable mi = std::get<MiTable>(FinishPipeline(*programs[s], runner.counts(), kMiK,
                                                    kMiMinCount));
      OracleTables want = OracleMi(programs[s]->program, docs, scripts[s].object_rules, kMiK,
                                   kMiMinCount);
      report.comparisons += want.pairs.size();
      if (pairs.pair_counts != want.pairs || pairs.marginals_a != want.marginals_a ||
          pairs.marginals_b != want.marginals_b || mi.corpus_size != want.corpus_size) {
        ok = false;
        why = "counts differ";
      } else if (mi.values.size() != want.mi.size()) {
        ok = false;
        why = "MI key sets differ";
      } else {
        for (const auto& [pair, value] : want.mi) {
          auto it = mi.values.find(pair);
          if (it == mi.values.end() || !(std::fabs(it->second - value) <= tolerance)) {
            ok = false;
            why = "MI differs at (" + pair.first + ", " + pair.second + ")";
            break;
          }
        }
      }
      if (!ok) {
        why = "corpus " + std::to_string(i) + " script " + std::to_string(s) + ": " + why;
        break;
      }
    }
    ++report.cases;
    if (ok) {
      ++report.agreed;
    } else {
      Fail(report, why);
    }
  }
  return report;
}

Agreement CheckVsmAgreement(std::uint64_t seed, std::size_t models, int max_rows) {
  Rng rng(seed);
  Agreement report;
  for (std::size_t i = 0; i < models; ++i) {
    int rows = 1 + static_cast<int>(Uniform(rng, static_cast<std::uint64_t>(max_rows)));
    int dims = 1 + static_cast<int>(Uniform(rng, 40));
    double density = 0.05 + 0.3 * static_cast<double>(Uniform(rng, 1000)) / 1000.0;
    MiTable mi = RandomMiTable(rng, rows, dims, density);
    FreqTable freq = RandomRowFreq(rng, mi);
    VectorModel m = VectorModel::Build(mi, freq, ModelKind::kObjectActivity);
    bool ok = true;
    if (!m.empty()) {
      for (int q = 0; q < 10 && ok; ++q) {
        std::vector<std::string> terms;
        std::size_t n_terms = 1 + Uniform(rng, 4);
        for (std::size_t t = 0; t < n_terms; ++t) {
          terms.push_back(m.dim_vocab()[Uniform(rng, m.dim_vocab().size())]);
        }
        std::size_t top_k = 1 + Uniform(rng, 30);
        ++report.comparisons;
        ok = m.Query(terms, top_k) == BruteForceQuery(mi, freq, terms, top_k);
      }
      for (int q = 0; q < 5 && ok; ++q) {
        const std::string& row = m.rows()[Uniform(rng, m.rows().size())].label;
        std::size_t top_k = 1 + Uniform(rng, 30);
        ++report.comparisons;
        ok = m.Neighbors(row, top_k) == BruteForceNeighbors(mi, freq, row, top_k);
      }
    }
    ++report.cases;
    if (ok) {
      ++report.agreed;
    } else {
      Fail(report, "model " + std::to_string(i));
    }
  }
  return report;
}

}  // namespace akb::oracle
