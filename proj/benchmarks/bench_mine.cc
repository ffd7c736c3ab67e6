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

// End-to-end mining throughput (all three scripts) over in-memory documents.

#include <benchmark/benchmark.h>

#include <vector>

#include "activitykb/knowledge_base.h"
#include "activitykb/synthetic.h"

namespace {

void BM_MineDocuments(benchmark::State& state) {
  akb::SyntheticSpec spec = akb::DefaultSyntheticSpec();
  for (akb::ActivityTemplate& t : spec.activities) t.count /= 4;
  for (akb::SequenceTemplate& s : spec.sequences) s.count /= 4;
  akb::SyntheticStats stats;
  const std::vector<akb::Document> docs = akb::GenerateSyntheticDocuments(spec, &stats);
  akb::MineConfig config;
  config.shards = static_cast<int>(state.range(0));
  config.built_at = "2026-01-01T00:00:00Z";
  for (auto _ : state) {
    benchmark::DoNotOptimize(akb::MineDocuments(docs, config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stats.tokens));
  state.counters["tokens"] = static_cast<double>(stats.tokens);
}

BENCHMARK(BM_MineDocuments)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
