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


#ifndef TEAMGAMES_BANDIT_HPP
#define TEAMGAMES_BANDIT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace teamgames {

/// Independent k-armed bandit over the action grid {0, 1/(m-1), ..., 1}.
struct AgentState {
  std::vector<double> q_values;
  std::vector<double> arm_actions;
  double tau = 0.1;
  double k = 1000.0;
  std::uint64_t step = 0;
};

/// Fresh agent with zero Q-values. Throws ConfigError unless arms >= 2,
/// tau > 0 and k > 0.
AgentState make_agent(std::size_t arms = 101, double tau = 0.1, double k = 1000.0);

/// Soft-max over Q / (Q_max tau). Uniform while Q_max <= 1e-9.
std::vector<double> boltzmann_probabilities(const AgentState& state);

/// Same, written into `out` (resized as needed) to keep training loops
/// allocation free.
void boltzmann_probabilities(const AgentState& state, std::vector<double>& out);

/// k / (k + step).
double learning_rate(std::uint64_t step, double k);

/// Q(arm) += lr (reward - Q(arm)); increments the step counter.
void update_q(AgentState& state, std::size_t arm, double reward);

/// Index of the best arm; ties go to the smallest action.
std::size_t greedy_arm(const AgentState& state);

/// Action of the best arm.
double greedy_action(const AgentState& state);

/// Inverse-CDF draw from `probabilities` for u in [0, 1).
std::size_t sample_arm(std::span<const double> probabilities, double u);

/// "arm_action,q_value" rows, one per arm.
std::string q_table_csv(const AgentState& state);

}  // namespace teamgames

#endif  // TEAMGAMES_BANDIT_HPP
