// Copyright 2026 The wwweval Authors.
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

#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "wwweval/stats.h"
#include "wwweval/trec_io.h"

namespace {

using namespace wwweval;

ScoreMatrix random_matrix(std::size_t topics, std::size_t systems) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::string> t, s;
  for (std::size_t i = 0; i < topics; ++i) t.push_back("t" + std::to_string(i));
  for (std::size_t j = 0; j < systems; ++j) s.push_back("s" + std::to_string(j));
  std::vector<double> cells(topics * systems);
  for (auto &x : cells) x = u(gen);
  return ScoreMatrix(t, s, cells);
}

// The WWW-2 shape: 80 topics x 20 runs. Argument: thread count.
void BM_TukeyHsd(benchmark::State &state) {
  const ScoreMatrix m = random_matrix(80, 20);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(randomized_tukey_hsd(m, 10000, 1, threads));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_TukeyHsd)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_KendallTauBootstrap(benchmark::State &state) {
  const ScoreMatrix m = random_matrix(2, 40);
  std::vector<double> a, b;
  for (std::size_t s = 0; s < m.num_systems(); ++s) {
    a.push_back(m.at(0, s));
    b.push_back(m.at(1, s));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau(a, b, 10000, 1, 1));
}
BENCHMARK(BM_KendallTauBootstrap)->Unit(benchmark::kMillisecond);

void BM_ResidualVariance(benchmark::State &state) {
  const ScoreMatrix m = random_matrix(80, 20);
  for (auto _ : state) benchmark::DoNotOptimize(residual_variance(m));
}
BENCHMARK(BM_ResidualVariance);

}  // namespace

BENCHMARK_MAIN();
