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

// Pattern scanning throughput over synthetic sentences.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "activitykb/corpus.h"
#include "activitykb/knowledge_base.h"
#include "activitykb/synthetic.h"
#include "activitykb/tc_lang.h"
#include "activitykb/tc_runtime.h"

namespace {

const std::vector<akb::Document>& Docs() {
  static const std::vector<akb::Document> docs = [] {
    akb::SyntheticSpec spec = akb::DefaultSyntheticSpec();
    for (akb::ActivityTemplate& t : spec.activities) t.count /= 4;
    for (akb::SequenceTemplate& s : spec.sequences) s.count /= 4;
    return akb::GenerateSyntheticDocuments(spec);
  }();
  return docs;
}

void ScanRule(benchmark::State& state, std::string_view script_template, const char* rule) {
  const akb::tc::CheckedProgram program =
      akb::tc::ParseAndCheck(akb::scripts::Instantiate(script_template, 50));
  const akb::tc::CompiledPattern pattern = akb::tc::CompileRule(program, rule);
  std::vector<std::span<const akb::TaggedToken>> sentences;
  std::int64_t tokens = 0;
  for (const akb::Document& doc : Docs()) {
    for (auto s : akb::Sentences(doc.tokens)) {
      sentences.push_back(s);
      tokens += static_cast<std::int64_t>(s.size());
    }
  }
  for (auto _ : state) {
    std::size_t matches = 0;
    for (auto s : sentences) matches += akb::tc::ScanSentence(pattern, s).size();
    benchmark::DoNotOptimize(matches);
  }
  state.SetItemsProcessed(state.iterations() * tokens);
}

void BM_ScanActivity(benchmark::State& state) {
  ScanRule(state, akb::scripts::kActivityObjectTemplate, "activity");
}
void BM_ScanNounPhrase(benchmark::State& state) {
  ScanRule(state, akb::scripts::kActivityObjectTemplate, "np");
}
void BM_ScanSvo(benchmark::State& state) {
  ScanRule(state, akb::scripts::kObjectAffordanceTemplate, "svo");
}

BENCHMARK(BM_ScanActivity)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanNounPhrase)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSvo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
