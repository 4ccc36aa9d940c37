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

#include "teamgames/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "teamgames/error.hpp"

namespace teamgames {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

std::string_view to_string(TaskType type) {
  switch (type) {
    case TaskType::conjunctive:
      return "conjunctive";
    case TaskType::additive:
      return "additive";
    case TaskType::disjunctive:
      return "disjunctive";
  }
  return "unknown";
}

TaskType GameSpec::task_type() const {
  if (rho == 1.0) return TaskType::additive;
  return rho < 1.0 ? TaskType::conjunctive : TaskType::disjunctive;
}

void GameSpec::validate() const {
  if (expertise.empty()) throw ConfigError("game requires n >= 1 players");
  if (!std::isfinite(rho) || rho == 0.0) throw ConfigError("rho must be a finite non-zero real");
  if (betas.size() != n() || leisure_capacity.size() != n())
    throw ConfigError("betas, expertise and leisure_capacity must all have length n");
  if (!(delta_t > 0.0) || !std::isfinite(delta_t)) throw ConfigError("delta_t must be > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be > 0");
  for (double b : betas)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("betas must all be > 0");
  for (double p : expertise)
    if (!in_unit_interval(p)) throw ConfigError("expertise must lie in [0, 1]");
  for (double p : leisure_capacity)
    if (!in_unit_interval(p)) throw ConfigError("leisure_capacity must lie in [0, 1]");
  evaluation.validate();
}

GameSpec GameSpec::make(std::vector<double> expertise, double rho, EvaluationSpec evaluation,
                        double delta_t, double alpha) {
  GameSpec game;
  const std::size_t n = expertise.size();
  game.rho = rho;
  game.betas.assign(n, 1.0);
  game.delta_t = delta_t;
  game.expertise = std::move(expertise);
  game.leisure_capacity.assign(n, 1.0);
  game.alpha = alpha;
  game.evaluation = evaluation;
  return game;
}

double gift_from_action(double action, double expertise, double delta_t) {
  if (!in_unit_interval(action)) throw InputError("action must lie in [0, 1]");
  if (!in_unit_interval(expertise)) throw InputError("expertise must lie in [0, 1]");
  if (!(delta_t > 0.0)) throw InputError("delta_t must be > 0");
  return action * expertise * delta_t;
}

double ces_aggregate(std::span<const double> gifts, double rho, std::span<const double> betas) {
  if (rho == 0.0 || !std::isfinite(rho)) throw ConfigError("ces_aggregate: rho must be non-zero");
  if (gifts.size() != betas.size()) throw InputError("ces_aggregate: gifts/betas length mismatch");

  if (rho == 1.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < gifts.size(); ++i) {
      if (!(gifts[i] >= 0.0)) throw InputError("ces_aggregate: gifts must be >= 0");
      sum += betas[i] * gifts[i];
    }
    return sum;
  }

  double m = -std::numeric_limits<double>::infinity();
  bool any_positive = false;
  for (std::size_t i = 0; i < gifts.size(); ++i) {
    if (!(gifts[i] >= 0.0)) throw InputError("ces_aggregate: gifts must be >= 0");
    if (!(betas[i] > 0.0)) throw InputError("ces_aggregate: betas must be > 0");
    if (gifts[i] == 0.0) {
      if (rho < 0.0) return 0.0;
      continue;
    }
    any_positive = true;
    m = std::max(m, std::log(betas[i]) + rho * std::log(gifts[i]));
  }
  if (!any_positive) return 0.0;

  double sum = 0.0;
  for (std::size_t i = 0; i < gifts.size(); ++i) {
    if (gifts[i] == 0.0) continue;
    sum += std::exp(std::log(betas[i]) + rho * std::log(gifts[i]) - m);
  }
  return std::exp((m + std::log(sum)) / rho);
}

double private_good(double action, double leisure_capacity, double delta_t) {
  if (!in_unit_interval(action)) throw InputError("action must lie in [0, 1]");
  return (1.0 - action) * leisure_capacity * delta_t;
}

double utility(double leisure, double score, double alpha) {
  return std::pow(leisure, alpha) * score;
}

std::vector<double> gifts_from_actions(const GameSpec& game, std::span<const double> actions) {
  if (actions.size() != game.n()) throw InputError("joint action must have length n");
  std::vector<double> gifts(game.n());
  for (std::size_t i = 0; i < game.n(); ++i)
    gifts[i] = gift_from_action(actions[i], game.expertise[i], game.delta_t);
  return gifts;
}

double team_outcome(const GameSpec& game, std::span<const double> actions) {
  const auto gifts = gifts_from_actions(game, actions);
  return ces_aggregate(gifts, game.rho, game.betas);
}

std::vector<double> payoffs(const GameSpec& game, std::span<const double> actions) {
  const double score = eval_score(game.evaluation, team_outcome(game, actions));
  std::vector<double> out(game.n());
  for (std::size_t i = 0; i < game.n(); ++i) {
    const double x = private_good(actions[i], game.leisure_capacity[i], game.delta_t);
    out[i] = utility(x, score, game.alpha);
  }
  return out;
}

double payoff(const GameSpec& game, std::span<const double> actions, std::size_t player) {
  const double score = eval_score(game.evaluation, team_outcome(game, actions));
  const double x = private_good(actions[player], game.leisure_capacity[player], game.delta_t);
  return utility(x, score, game.alpha);
}

double max_achievable_utility(const GameSpec& game) {
  double sigma_sup = 0.0;
  if (game.evaluation.kind == EvaluationKind::identity) {
    std::vector<double> full(game.n());
    for (std::size_t i = 0; i < game.n(); ++i) full[i] = game.expertise[i] * game.delta_t;
    sigma_sup = ces_aggregate(full, game.rho, game.betas);
  } else {
    sigma_sup = game.evaluation.d;
  }
  double best = 0.0;
  for (std::size_t i = 0; i < game.n(); ++i)
    best = std::max(best, utility(game.leisure_capacity[i] * game.delta_t, sigma_sup, game.alpha));
  return best;
}

}  // namespace teamgames
