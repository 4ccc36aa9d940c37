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


#ifndef TEAMGAMES_SIMULATOR_HPP
#define TEAMGAMES_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamgames/bandit.hpp"
#include "teamgames/game.hpp"

namespace teamgames {

struct RoundResult {
  double G = 0.0;
  double score = 0.0;
  std::vector<double> rewards;
  /// G >= b. Informational only.
  bool passed = false;
};

/// One play of the one-shot game. Accepts every evaluation kind.
RoundResult play_round(const GameSpec& game, std::span<const double> actions);

/// How the reported joint action is read off a finished training run.
enum class Extraction {
  greedy,       ///< argmax of the final Q-table
  last_sample,  ///< arms drawn in the last episode
  tail_average  ///< mean sampled action over the last `tail_fraction` of episodes
};

std::string_view to_string(Extraction extraction);
Extraction extraction_from_string(std::string_view name);

struct TrainConfig {
  std::uint64_t episodes = 50000;
  double tau = 0.1;
  double k = 1000.0;
  std::uint64_t seed = 0;
  std::size_t arms = 101;
  /// Linearly lowers tau to tau / 100 over the run. Off by default.
  bool anneal = false;
  Extraction extraction = Extraction::greedy;
  double tail_fraction = 0.1;
  bool keep_q = false;
  bool trace = false;

  void validate() const;
};

struct TraceRow {
  std::uint64_t episode = 0;
  std::vector<double> actions;
  double G = 0.0;
  std::vector<double> rewards;
};

struct LearnedOutcome {
  /// Extracted joint action (the greedy one unless configured otherwise).
  std::vector<double> greedy_actions;
  double learned_G = 0.0;
  double learned_score = 0.0;
  std::uint64_t episodes = 0;
  std::uint64_t seed = 0;
  /// Final agents, filled when TrainConfig::keep_q is set.
  std::vector<AgentState> q_snapshots;
  /// Per-episode rows, filled when TrainConfig::trace is set.
  std::vector<TraceRow> trace;
};

/// Trains one independent bandit per player. Every episode all agents draw
/// an arm, the round is played, and each agent updates only its own arm.
/// Bitwise deterministic in (game, config).
LearnedOutcome train(const GameSpec& game, const TrainConfig& config);

/// (max - min) / mean * 100. Throws DegenerateInput if the list is empty or
/// the mean is not positive.
double dispersion(std::span<const double> values);

/// "episode,a_1..a_n,G,reward_1..reward_n" rows.
std::string trace_csv(const LearnedOutcome& outcome);

}  // namespace teamgames

#endif  // TEAMGAMES_SIMULATOR_HPP
