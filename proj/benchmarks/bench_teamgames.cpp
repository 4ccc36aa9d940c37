// Copyright 2026 The teamgames Authors.
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


#include <vector>

#include <benchmark/benchmark.h>

#include "teamgames/bandit.hpp"
#include "teamgames/equilibrium.hpp"
#include "teamgames/game.hpp"
#include "teamgames/simulator.hpp"

namespace {

using teamgames::EvaluationSpec;
using teamgames::GameSpec;

void BM_CesAggregate(benchmark::State& state) {
  const std::vector<double> gifts{1.5, 2.5, 0.75, 4.0};
  const std::vector<double> betas(gifts.size(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(teamgames::ces_aggregate(gifts, -10.0, betas));
}
BENCHMARK(BM_CesAggregate);

void BM_SolveConcave(benchmark::State& state) {
  const auto game = GameSpec::make({0.3, 0.7}, state.range(0) == 0 ? 1.0 : -10.0,
                                   EvaluationSpec::logistic(10.0, 2.0, 5.0));
  for (auto _ : state) benchmark::DoNotOptimize(teamgames::solve_equilibria(game));
}
BENCHMARK(BM_SolveConcave)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumerateDisjunctive(benchmark::State& state) {
  std::vector<double> expertise;
  for (int i = 0; i < state.range(0); ++i) expertise.push_back(0.5 + 0.05 * i);
  const auto game = GameSpec::make(expertise, 10.0, EvaluationSpec::logistic(10.0, 2.0, 5.0));
  for (auto _ : state) benchmark::DoNotOptimize(teamgames::enumerate_disjunctive_equilibria(game));
}
BENCHMARK(BM_EnumerateDisjunctive)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Boltzmann(benchmark::State& state) {
  auto agent = teamgames::make_agent(101, 0.1, 1000.0);
  for (std::size_t a = 0; a < agent.q_values.size(); ++a) agent.q_values[a] = 0.1 * double(a);
  std::vector<double> probs;
  for (auto _ : state) {
    teamgames::boltzmann_probabilities(agent, probs);
    benchmark::DoNotOptimize(probs.data());
  }
}
BENCHMARK(BM_Boltzmann);

void BM_TrainEpisodes(benchmark::State& state) {
  const auto game = GameSpec::make({0.5, 0.7}, 1.0, EvaluationSpec::logistic(10.0, 2.0, 5.0));
  teamgames::TrainConfig config;
  config.episodes = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(teamgames::train(game, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainEpisodes)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
