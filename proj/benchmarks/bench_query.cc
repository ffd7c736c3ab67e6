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

// Query latency of the vector-space model on random sparse tables.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "activitykb/aggregate.h"
#include "activitykb/vsm.h"

namespace {

akb::VectorModel RandomModel(int rows, int dims, double density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(-2.0, 8.0);
  std::bernoulli_distribution keep(density);
  akb::MiTable mi;
  akb::FreqTable freq;
  for (int r = 0; r < rows; ++r) {
    const std::string row = "activity" + std::to_string(r);
    freq.Add(row, 1 + rng() % 100);
    for (int d = 0; d < dims; ++d) {
      if (keep(rng)) mi.values[{"object" + std::to_string(d), row}] = value(rng);
    }
  }
  return akb::VectorModel::Build(mi, freq, akb::ModelKind::kObjectActivity);
}

void BM_Query(benchmark::State& state) {
  std::mt19937_64 rng(42);
  const int rows = static_cast<int>(state.range(0));
  akb::VectorModel model = RandomModel(rows, 2000, 0.01, rng);
  std::vector<std::vector<std::string>> queries;
  for (int q = 0; q < 64; ++q) {
    std::vector<std::string> terms;
    for (int t = 0; t < 3; ++t) {
      terms.push_back(model.dim_vocab()[rng() % model.dim_vocab().size()]);
    }
    queries.push_back(std::move(terms));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Query(queries[i++ % queries.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Neighbors(benchmark::State& state) {
  std::mt19937_64 rng(7);
  akb::VectorModel model = RandomModel(static_cast<int>(state.range(0)), 2000, 0.01, rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Neighbors(model.rows()[i++ % model.rows().size()].label));
  }
  state.SetItemsProcessed(state.iterations());
}

BENCHMARK(BM_Query)->Arg(1000)->Arg(10000)->Arg(50000);
BENCHMARK(BM_Neighbors)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
