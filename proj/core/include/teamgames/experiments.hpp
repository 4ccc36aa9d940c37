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


#ifndef TEAMGAMES_EXPERIMENTS_HPP
#define TEAMGAMES_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "teamgames/equilibrium.hpp"
#include "teamgames/evaluation.hpp"
#include "teamgames/game.hpp"
#include "teamgames/simulator.hpp"

namespace teamgames {

/// Grid of two-player teams, task types and pass thresholds. Every cell is
/// solved and trained `repetitions` times.
struct SweepConfig {
  std::vector<double> expertise_values{0.3, 0.5, 0.7, 0.9};
  std::vector<double> rho_values{-100.0, -10.0, -3.0, 0.5, 1.0, 3.0, 10.0, 100.0};
  std::vector<double> b_values{3.0, 5.0, 7.0};
  std::size_t repetitions = 1;
  EvaluationKind evaluation_kind = EvaluationKind::logistic;
  double d = 10.0;
  double gamma = 2.0;
  double delta_t = 10.0;
  double alpha = 2.0;
  /// Episodes, tau, k and extraction; the seed is replaced per cell.
  TrainConfig train;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

struct ExperimentRecord {
  std::size_t index = 0;
  double p1 = 0.0;
  double p2 = 0.0;
  double rho = 0.0;
  double b = 0.0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  /// Team outcomes of every equilibrium found, in solver order.
  std::vector<double> G_hat;
  std::vector<std::vector<double>> equilibrium_actions;
  /// Why the cell has no equilibria (empty when it has).
  std::string skip_reason;
  std::vector<double> learned_actions;
  double G_tilde = 0.0;
};

/// The evaluation used for a sweep cell.
EvaluationSpec cell_evaluation(const SweepConfig& config, double b);

/// The game of one sweep cell.
GameSpec cell_game(const SweepConfig& config, double p1, double p2, double rho, double b);

/// Records in cell order (teams, then rho, then b, then repetition), each
/// trained with seed mix_seed(base_seed, index). Identical for every worker
/// count.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

/// Evaluates `fn(i)` for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// (Ĝ, G̃) per record with at least one equilibrium, Ĝ being the equilibrium
/// outcome nearest to G̃.
std::vector<std::pair<double, double>> regression_pairs(std::span<const ExperimentRecord> records);

struct RegressionReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
  std::vector<double> residuals;
};

/// Ordinary least squares of G̃ on Ĝ. Throws DegenerateInput with fewer
/// than two points or when every Ĝ is equal.
RegressionReport fit_regression(std::span<const std::pair<double, double>> pairs);

struct HeatmapCell {
  double p1 = 0.0;
  double p2 = 0.0;
  /// Mean G̃ over repetitions; empty when the sweep has no record for it.
  std::optional<double> G_tilde;
  std::optional<bool> passed;
};

/// Square grid over the expertise levels of the (rho, b) slice, row-major in
/// (p1, p2). Teams are unordered, so (p1, p2) and (p2, p1) hold one value.
std::vector<HeatmapCell> heatmap_table(std::span<const ExperimentRecord> records, double rho,
                                       double b);

struct StrategyRow {
  double p1 = 0.0;
  double p2 = 0.0;
  /// One learned action pair per repetition, in percent rounded to integers.
  std::vector<std::pair<int, int>> actions_pct;
};

/// Learned action pairs of the (rho, b) slice, p1 <= p2.
std::vector<StrategyRow> strategy_table(std::span<const ExperimentRecord> records, double rho,
                                        double b);

struct IncrementRow {
  double expertise = 0.0;
  /// Mean learned action at each b, ascending.
  std::vector<double> mean_action;
  /// Percentage change between consecutive b values; empty when the lower
  /// mean is zero.
  std::vector<std::optional<double>> increase_pct;
};

/// Per expertise level: the mean action of players with that expertise over
/// every team of the rho slice (a homogeneous team counts once, with the
/// mean of both actions), and its percentage change as b rises.
std::vector<IncrementRow> increment_table(std::span<const ExperimentRecord> records, double rho);

struct HeavisideRow {
  double p1 = 0.0;
  double p2 = 0.0;
  std::vector<double> G_tilde;
  std::vector<std::vector<double>> actions;
  double mean_G = 0.0;
  /// Empty when the mean outcome is zero.
  std::optional<double> dispersion_pct;
  /// Whether the lower-expertise player learned action 0 in every run;
  /// empty for homogeneous teams.
  std::optional<bool> weaker_abstains;
};

struct HeavisideConfig {
  std::vector<std::pair<double, double>> teams;
  double b = 5.0;
  double d = 10.0;
  double delta_t = 10.0;
  double alpha = 2.0;
  std::size_t repetitions = 3;
  TrainConfig train;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;
};

/// All unordered pairs over `levels`.
std::vector<std::pair<double, double>> unordered_pairs(std::span<const double> levels);

/// Trains every team on an additive task with a step evaluation.
std::vector<HeavisideRow> heaviside_study(const HeavisideConfig& config);

struct TuneTrial {
  double k = 0.0;
  double tau = 0.0;
  double score = 0.0;
};

struct TuneConfig {
  std::size_t budget = 0;
  double k_min = 10.0;
  double k_max = 1e5;
  double tau_min = 0.05;
  double tau_max = 0.3;
  /// Probe cells; each contributes |G̃ - Ĝ_nearest|.
  std::vector<GameSpec> probes;
  TrainConfig train;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct TuneResult {
  double k = 1000.0;
  double tau = 0.1;
  /// Mean |G̃ - Ĝ| of the chosen setting; empty when nothing was evaluated.
  std::optional<double> score;
  std::vector<TuneTrial> trials;
};

/// Random search, k log-uniform and tau uniform on their ranges. The
/// incumbent (train.k, train.tau) is evaluated first; with budget 0 it is
/// returned unevaluated.
TuneResult tune(const TuneConfig& config);

}  // namespace teamgames

#endif  // TEAMGAMES_EXPERIMENTS_HPP
