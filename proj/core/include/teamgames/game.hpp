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

#ifndef TEAMGAMES_GAME_HPP
#define TEAMGAMES_GAME_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "teamgames/evaluation.hpp"

namespace teamgames {

/// Task typology implied by the CES substitution parameter.
enum class TaskType { conjunctive, additive, disjunctive };

std::string_view to_string(TaskType type);

/// One-shot teamwork game. Players split a turn of length `delta_t` between
/// the team task (producing `expertise[i]` work units per time unit) and
/// leisure (`leisure_capacity[i]` leisure units per time unit). The team
/// outcome is the CES aggregate of the gifts with parameters (rho, betas),
/// and player i's payoff is x_i^alpha * sigma(G).
struct GameSpec {
  double rho = 1.0;
  std::vector<double> betas;
  double delta_t = 10.0;
  std::vector<double> expertise;
  std::vector<double> leisure_capacity;
  double alpha = 2.0;
  EvaluationSpec evaluation;

  std::size_t n() const { return expertise.size(); }

  TaskType task_type() const;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;

  /// Game with unit weights and unit leisure capacities, Δt = 10, α = 2.
  static GameSpec make(std::vector<double> expertise, double rho, EvaluationSpec evaluation,
                       double delta_t = 10.0, double alpha = 2.0);

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// g = a p Δt.
double gift_from_action(double action, double expertise, double delta_t);

/// (Σ β_i g_i^ρ)^{1/ρ}, evaluated in the log domain so |ρ| up to several
/// hundred neither overflows nor underflows. For ρ < 0 a zero gift forces
/// the aggregate to zero (the limit of the expression).
double ces_aggregate(std::span<const double> gifts, double rho, std::span<const double> betas);

/// x = (1 - a) p_L Δt.
double private_good(double action, double leisure_capacity, double delta_t);

/// x^α · score.
double utility(double leisure, double score, double alpha);

/// Gift vector for a joint action.
std::vector<double> gifts_from_actions(const GameSpec& game, std::span<const double> actions);

/// Team outcome G for a joint action.
double team_outcome(const GameSpec& game, std::span<const double> actions);

/// Payoff of every player for a joint action.
std::vector<double> payoffs(const GameSpec& game, std::span<const double> actions);

/// Payoff of one player for a joint action.
double payoff(const GameSpec& game, std::span<const double> actions, std::size_t player);

/// Upper bound on any player's payoff: (Δt p_L)^α · sup sigma.
double max_achievable_utility(const GameSpec& game);

}  // namespace teamgames

#endif  // TEAMGAMES_GAME_HPP
