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


#include "teamgames/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "teamgames/error.hpp"
#include "teamgames/rng.hpp"

namespace teamgames {

namespace {

// Rewards for a joint action with caller-owned buffers.
double play_into(const GameSpec& game, std::span<const double> actions, std::vector<double>& gifts,
                 std::vector<double>& rewards) {
  const std::size_t n = game.n();
  for (std::size_t i = 0; i < n; ++i) gifts[i] = actions[i] * game.expertise[i] * game.delta_t;
  const double G = ces_aggregate(gifts, game.rho, game.betas);
  const double score = eval_score(game.evaluation, G);
  for (std::size_t i = 0; i < n; ++i) {
    const double leisure = (1.0 - actions[i]) * game.leisure_capacity[i] * game.delta_t;
    rewards[i] = utility(leisure, score, game.alpha);
  }
  return G;
}

}  // namespace

RoundResult play_round(const GameSpec& game, std::span<const double> actions) {
  if (actions.size() != game.n()) throw InputError("joint action must have length n");
  for (double a : actions)
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("action must lie in [0, 1]");
  RoundResult out;
  std::vector<double> gifts(game.n());
  out.rewards.resize(game.n());
  out.G = play_into(game, actions, gifts, out.rewards);
  out.score = eval_score(game.evaluation, out.G);
  out.passed = out.G >= game.evaluation.b;
  return out;
}

std::string_view to_string(Extraction extraction) {
  switch (extraction) {
    case Extraction::greedy:
      return "greedy";
    case Extraction::last_sample:
      return "last_sample";
    case Extraction::tail_average:
      return "tail_average";
  }
  return "unknown";
}

Extraction extraction_from_string(std::string_view name) {
  if (name == "greedy") return Extraction::greedy;
  if (name == "last_sample") return Extraction::last_sample;
  if (name == "tail_average") return Extraction::tail_average;
  throw ConfigError(fmt::format(
      "unknown extraction '{}' (expected greedy, last_sample or tail_average)", name));
}

void TrainConfig::validate() const {
  if (episodes < 1) throw ConfigError("episodes must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k must be > 0");
  if (arms < 2) throw ConfigError("arms must be >= 2");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw ConfigError("tail_fraction must lie in (0, 1]");
}

LearnedOutcome train(const GameSpec& game, const TrainConfig& config) {
  game.validate();
  config.validate();
  const std::size_t n = game.n();

  std::vector<AgentState> agents(n, make_agent(config.arms, config.tau, config.k));
  Rng rng(config.seed);

  std::vector<double> probs;
  std::vector<std::size_t> arms(n);
  std::vector<double> actions(n), gifts(n), rewards(n), tail_sum(n, 0.0);
  const auto tail_len = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(config.tail_fraction * config.episodes)));
  const std::uint64_t tail_start = config.episodes - std::min(tail_len, config.episodes);

  LearnedOutcome out;
  if (config.trace) out.trace.reserve(config.episodes);

  for (std::uint64_t t = 0; t < config.episodes; ++t) {
    if (config.anneal) {
      const double frac = static_cast<double>(t) / static_cast<double>(config.episodes);
      const double tau = config.tau * (1.0 - 0.99 * frac);
      for (auto& agent : agents) agent.tau = tau;
    }
    for (std::size_t i = 0; i < n; ++i) {
      boltzmann_probabilities(agents[i], probs);
      arms[i] = sample_arm(probs, rng.uniform());
      actions[i] = agents[i].arm_actions[arms[i]];
    }
    const double G = play_into(game, actions, gifts, rewards);
    for (std::size_t i = 0; i < n; ++i) update_q(agents[i], arms[i], rewards[i]);
    if (t >= tail_start)
      for (std::size_t i = 0; i < n; ++i) tail_sum[i] += actions[i];
    if (config.trace) out.trace.push_back({t, actions, G, rewards});
  }

  out.greedy_actions.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (config.extraction) {
      case Extraction::greedy:
        out.greedy_actions[i] = greedy_action(agents[i]);
        break;
      case Extraction::last_sample:
        out.greedy_actions[i] = actions[i];
        break;
      case Extraction::tail_average:
        out.greedy_actions[i] = tail_sum[i] / static_cast<double>(config.episodes - tail_start);
        break;
    }
  }
  out.learned_G = team_outcome(game, out.greedy_actions);
  out.learned_score = eval_score(game.evaluation, out.learned_G);
  out.episodes = config.episodes;
  out.seed = config.seed;
  if (config.keep_q) out.q_snapshots = std::move(agents);
  return out;
}

double dispersion(std::span<const double> values) {
  if (values.empty()) throw DegenerateInput("dispersion of an empty list is undefined");
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (!(mean > 0.0)) throw DegenerateInput("dispersion is undefined for a non-positive mean");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return (*hi - *lo) / mean * 100.0;
}

std::string trace_csv(const LearnedOutcome& outcome) {
  const std::size_t n = outcome.greedy_actions.size();
  std::string out = "episode";
  for (std::size_t i = 0; i < n; ++i) out += fmt::format(",a_{}", i + 1);
  out += ",G";
  for (std::size_t i = 0; i < n; ++i) out += fmt::format(",reward_{}", i + 1);
  out += '\n';
  for (const auto& row : outcome.trace) {
    out += fmt::format("{}", row.episode);
    for (double a : row.actions) out += fmt::format(",{:.17g}", a);
    out += fmt::format(",{:.17g}", row.G);
    for (double r : row.rewards) out += fmt::format(",{:.17g}", r);
    out += '\n';
  }
  return out;
}

}  // namespace teamgames
