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


#include "teamgames/bandit.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "teamgames/error.hpp"

namespace teamgames {

AgentState make_agent(std::size_t arms, double tau, double k) {
  if (arms < 2) throw ConfigError("bandit needs at least 2 arms");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k must be > 0");
  AgentState state;
  state.q_values.assign(arms, 0.0);
  state.arm_actions.resize(arms);
  const double last = static_cast<double>(arms - 1);
  for (std::size_t a = 0; a < arms; ++a) state.arm_actions[a] = static_cast<double>(a) / last;
  state.tau = tau;
  state.k = k;
  return state;
}

void boltzmann_probabilities(const AgentState& state, std::vector<double>& out) {
  if (!(state.tau > 0.0)) throw ConfigError("tau must be > 0");
  const auto& q = state.q_values;
  out.resize(q.size());
  const double q_max = *std::max_element(q.begin(), q.end());
  if (q_max <= 1e-9) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(q.size()));
    return;
  }
  // exp((Q - Q_max) / (Q_max tau)) keeps every exponent <= 0.
  const double scale = 1.0 / (q_max * state.tau);
  double sum = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    out[a] = std::exp((q[a] - q_max) * scale);
    sum += out[a];
  }
  for (double& p : out) p /= sum;
}

std::vector<double> boltzmann_probabilities(const AgentState& state) {
  std::vector<double> out;
  boltzmann_probabilities(state, out);
  return out;
}

double learning_rate(std::uint64_t step, double k) {
  return k / (k + static_cast<double>(step));
}

void update_q(AgentState& state, std::size_t arm, double reward) {
  if (arm >= state.q_values.size()) throw InputError("arm index out of range");
  double& q = state.q_values[arm];
  q += learning_rate(state.step, state.k) * (reward - q);
  ++state.step;
}

std::size_t greedy_arm(const AgentState& state) {
  const auto& q = state.q_values;
  return static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
}

double greedy_action(const AgentState& state) { return state.arm_actions[greedy_arm(state)]; }

std::size_t sample_arm(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  for (std::size_t a = 0; a < probabilities.size(); ++a) {
    cumulative += probabilities[a];
    if (u < cumulative) return a;
  }
  // Rounding left the total just below u; fall back to the last arm with mass.
  for (std::size_t a = probabilities.size(); a-- > 0;)
    if (probabilities[a] > 0.0) return a;
  return 0;
}

std::string q_table_csv(const AgentState& state) {
  std::string out = "arm_action,q_value\n";
  for (std::size_t a = 0; a < state.q_values.size(); ++a)
    out += fmt::format("{:.17g},{:.17g}\n", state.arm_actions[a], state.q_values[a]);
  return out;
}

}  // namespace teamgames
