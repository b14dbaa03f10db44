/*
 * Copyright 2026 The Recourse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>

#include "recourse/cost.hpp"
#include "recourse/model.hpp"
#include "recourse/sampling.hpp"
#include "recourse/schema.hpp"
#include "recourse/search.hpp"
#include "recourse/synthetic.hpp"

namespace recourse {
namespace {

CostMatrix Random(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) c(i, j) = u(rng) < 0.1 ? kInfinity : u(rng);
  }
  return c;
}

void BM_ComputeBenefits(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(1);
  const auto cb = Random(rng, n, m);
  const auto c = Random(rng, n, m);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeBenefits(cb, c));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}
BENCHMARK(BM_ComputeBenefits)->Args({10, 100})->Args({30, 100})->Args({10, 1000});

struct Adult {
  DatasetSchema schema = AdultLikeSchema();
  Dataset data = GenerateAdultLike(schema, 4000, 1);
  PercentileTable table = BuildPercentileTable(data.rows, schema);
};

const Adult& Fixture() {
  static const Adult a;
  return a;
}

void BM_BuildCostMatrix(benchmark::State& state) {
  const Adult& a = Fixture();
  const UserState& origin = a.data.rows.front();
  const auto samples = SampleCostBatch(a.schema, a.table, origin, 100, Distribution::kMix, 3);
  std::vector<UserState> set(a.data.rows.begin(), a.data.rows.begin() + state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildCostMatrix(a.schema, origin, set, samples));
  }
}
BENCHMARK(BM_BuildCostMatrix)->Arg(10)->Arg(30);

void BM_SampleCostBatch(benchmark::State& state) {
  const Adult& a = Fixture();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleCostBatch(a.schema, a.table, a.data.rows[seed % 100], 100,
                                             Distribution::kMix, seed));
    ++seed;
  }
}
BENCHMARK(BM_SampleCostBatch);

void BM_ColsPerUser(benchmark::State& state) {
  const Adult& a = Fixture();
  TrainConfig tc;
  tc.architecture = Architecture::kLogistic;
  tc.epochs = 5;
  const auto clf = TrainClassifier(a.data.rows, *a.data.labels, a.schema, tc).classifier;
  const UserState& origin = a.data.rows[7];
  const auto samples = SampleCostBatch(a.schema, a.table, origin, 100, Distribution::kMix, 3);
  SearchConfig config;
  config.budget = static_cast<std::size_t>(state.range(0));
  config.set_size = 10;
  config.num_samples = 100;
  for (auto _ : state) {
    BudgetMeter meter(config.budget);
    benchmark::DoNotOptimize(Cols(origin, clf, samples, a.schema, config, meter));
  }
}
BENCHMARK(BM_ColsPerUser)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace recourse

BENCHMARK_MAIN();
