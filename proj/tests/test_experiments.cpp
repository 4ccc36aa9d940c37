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


#include "teamgames/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "teamgames/error.hpp"
#include "teamgames/rng.hpp"

namespace teamgames {
namespace {

SweepConfig small_sweep() {
  SweepConfig cfg;
  cfg.expertise_values = {0.3, 0.9};
  cfg.rho_values = {1.0, 10.0};
  cfg.b_values = {5.0};
  cfg.repetitions = 2;
  cfg.train.episodes = 500;
  cfg.base_seed = 11;
  return cfg;
}

ExperimentRecord record(double p1, double p2, double rho, double b, std::vector<double> actions,
                        double G_tilde) {
  ExperimentRecord r;
  r.p1 = p1;
  r.p2 = p2;
  r.rho = rho;
  r.b = b;
  r.learned_actions = std::move(actions);
  r.G_tilde = G_tilde;
  return r;
}

TEST(RunSweep, CellOrderAndSeeds) {
  const auto records = run_sweep(small_sweep());
  ASSERT_EQ(records.size(), 12u);  // 3 teams x 2 rho x 1 b x 2 repetitions
  EXPECT_EQ(records[0].p1, 0.3);
  EXPECT_EQ(records[0].p2, 0.3);
  EXPECT_EQ(records[0].rho, 1.0);
  EXPECT_EQ(records[1].repetition, 1u);
  EXPECT_EQ(records[2].rho, 10.0);
  EXPECT_EQ(records[4].p2, 0.9);
  EXPECT_EQ(records[11].p1, 0.9);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].index, i);
    EXPECT_EQ(records[i].seed, mix_seed(11, i));
    EXPECT_EQ(records[i].learned_actions.size(), 2u);
  }
}

TEST(RunSweep, EquilibriaMatchTheSolver) {
  const auto cfg = small_sweep();
  for (const auto& r : run_sweep(cfg)) {
    const auto eqs = solve_equilibria(cell_game(cfg, r.p1, r.p2, r.rho, r.b));
    ASSERT_EQ(r.G_hat.size(), eqs.size());
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      EXPECT_EQ(r.G_hat[e], eqs[e].aggregate_G);
      EXPECT_EQ(r.equilibrium_actions[e], eqs[e].actions);
    }
    EXPECT_TRUE(r.skip_reason.empty());
    EXPECT_NEAR(r.G_tilde, team_outcome(cell_game(cfg, r.p1, r.p2, r.rho, r.b), r.learned_actions), 1e-12);
  }
}

TEST(RunSweep, IndependentOfWorkerCount) {
  auto cfg = small_sweep();
  const auto serial = run_sweep(cfg);
  cfg.workers = 3;
  const auto parallel = run_sweep(cfg);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].learned_actions, parallel[i].learned_actions);
    EXPECT_EQ(serial[i].G_tilde, parallel[i].G_tilde);
  }
}

TEST(RunSweep, StepEvaluationCellsAreTrainedButNotSolved) {
  auto cfg = small_sweep();
  cfg.evaluation_kind = EvaluationKind::heaviside;
  cfg.rho_values = {1.0};
  const auto records = run_sweep(cfg);
  for (const auto& r : records) {
    EXPECT_TRUE(r.G_hat.empty());
    EXPECT_EQ(r.skip_reason, "evaluation not smooth");
    EXPECT_EQ(r.learned_actions.size(), 2u);
  }
  EXPECT_TRUE(regression_pairs(records).empty());
}

TEST(RunSweep, RejectsInvalidConfig) {
  auto cfg = small_sweep();
  cfg.rho_values = {0.0};
  EXPECT_THROW(run_sweep(cfg), ConfigError);
  cfg = small_sweep();
  cfg.expertise_values = {1.2};
  EXPECT_THROW(run_sweep(cfg), ConfigError);
  cfg = small_sweep();
  cfg.repetitions = 0;
  EXPECT_THROW(run_sweep(cfg), ConfigError);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Regression, PairsUseTheNearestEquilibrium) {
  auto r = record(0.5, 0.5, 10.0, 5.0, {0.5, 0.0}, 3.9);
  r.G_hat = {5.0, 4.0, 2.0};
  auto skipped = record(0.5, 0.5, 1.0, 5.0, {0.0, 0.0}, 1.0);
  const std::vector<ExperimentRecord> records{r, skipped};
  const auto pairs = regression_pairs(records);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, 4.0);
  EXPECT_EQ(pairs[0].second, 3.9);
}

TEST(Regression, ExactLine) {
  std::vector<std::pair<double, double>> pairs;
  for (double x : {1.0, 2.0, 4.0, 7.0}) pairs.emplace_back(x, 2.0 * x + 1.0);
  const auto rep = fit_regression(pairs);
  EXPECT_NEAR(rep.slope, 2.0, 1e-12);
  EXPECT_NEAR(rep.intercept, 1.0, 1e-12);
  EXPECT_NEAR(rep.r_squared, 1.0, 1e-12);
  EXPECT_EQ(rep.n_points, 4u);
}

TEST(Regression, HandWorkedExample) {
  const std::vector<std::pair<double, double>> pairs{{0.0, 1.0}, {1.0, 3.0}, {2.0, 2.0}};
  const auto rep = fit_regression(pairs);
  EXPECT_NEAR(rep.slope, 0.5, 1e-12);
  EXPECT_NEAR(rep.intercept, 1.5, 1e-12);
  EXPECT_NEAR(rep.r_squared, 0.25, 1e-12);
  ASSERT_EQ(rep.residuals.size(), 3u);
  EXPECT_NEAR(rep.residuals[0], -0.5, 1e-12);
  EXPECT_NEAR(rep.residuals[1], 1.0, 1e-12);
  EXPECT_NEAR(rep.residuals[2], -0.5, 1e-12);
}

TEST(Regression, DegenerateInputs) {
  const std::vector<std::pair<double, double>> one{{1.0, 1.0}};
  EXPECT_THROW(fit_regression(one), DegenerateInput);
  const std::vector<std::pair<double, double>> flat{{2.0, 1.0}, {2.0, 3.0}};
  EXPECT_THROW(fit_regression(flat), DegenerateInput);
}

TEST(Heatmap, SymmetricMeanOverRepetitions) {
  const std::vector<ExperimentRecord> records{
      record(0.3, 0.3, 1.0, 5.0, {0.1, 0.1}, 1.0), record(0.3, 0.7, 1.0, 5.0, {0.1, 0.1}, 4.0),
      record(0.3, 0.7, 1.0, 5.0, {0.1, 0.1}, 6.0), record(0.3, 0.7, 1.0, 3.0, {0.1, 0.1}, 9.0)};
  const auto cells = heatmap_table(records, 1.0, 5.0);
  ASSERT_EQ(cells.size(), 4u);  // levels {0.3, 0.7}
  EXPECT_EQ(cells[0].G_tilde, 1.0);
  EXPECT_EQ(cells[0].passed, false);
  EXPECT_EQ(cells[1].G_tilde, 5.0);
  EXPECT_EQ(cells[1].passed, true);
  EXPECT_EQ(cells[2].G_tilde, 5.0);
  EXPECT_FALSE(cells[3].G_tilde.has_value());
}

TEST(StrategyTable, RoundsToWholePercent) {
  const std::vector<ExperimentRecord> records{record(0.3, 0.9, 1.0, 5.0, {0.004, 0.606}, 0.0),
                                              record(0.3, 0.9, 1.0, 5.0, {0.0, 0.61}, 0.0),
                                              record(0.5, 0.5, 1.0, 5.0, {0.3, 0.3}, 0.0),
                                              record(0.3, 0.9, 1.0, 7.0, {0.5, 0.5}, 0.0)};
  const auto rows = strategy_table(records, 1.0, 5.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].actions_pct, (std::vector<std::pair<int, int>>{{0, 61}, {0, 61}}));
  EXPECT_EQ(rows[1].actions_pct, (std::vector<std::pair<int, int>>{{30, 30}}));
}

TEST(IncrementTable, MeanActionPerLevelAndChange) {
  const std::vector<ExperimentRecord> records{
      record(0.3, 0.3, 1.0, 3.0, {0.2, 0.4}, 0.0), record(0.3, 0.7, 1.0, 3.0, {0.3, 0.5}, 0.0),
      record(0.3, 0.3, 1.0, 5.0, {0.5, 0.5}, 0.0), record(0.3, 0.7, 1.0, 5.0, {0.3, 0.0}, 0.0)};
  const auto rows = increment_table(records, 1.0);
  ASSERT_EQ(rows.size(), 2u);
  // Level 0.3: b=3 -> mean(0.3, 0.3) = 0.3, b=5 -> mean(0.5, 0.3) = 0.4.
  EXPECT_NEAR(rows[0].mean_action[0], 0.3, 1e-12);
  EXPECT_NEAR(rows[0].mean_action[1], 0.4, 1e-12);
  ASSERT_TRUE(rows[0].increase_pct[0].has_value());
  EXPECT_NEAR(*rows[0].increase_pct[0], 100.0 / 3.0, 1e-9);
  // Level 0.7: 0.5 then 0.0.
  EXPECT_NEAR(*rows[1].increase_pct[0], -100.0, 1e-9);
}

TEST(UnorderedPairs, CountsAndOrder) {
  const std::vector<double> levels{0.3, 0.5, 0.7, 0.9};
  const auto pairs = unordered_pairs(levels);
  ASSERT_EQ(pairs.size(), 10u);
  EXPECT_EQ(pairs.front(), std::make_pair(0.3, 0.3));
  EXPECT_EQ(pairs[1], std::make_pair(0.3, 0.5));
  EXPECT_EQ(pairs.back(), std::make_pair(0.9, 0.9));
}

TEST(HeavisideStudy, RowsSummariseRepeatedRuns) {
  HeavisideConfig cfg;
  cfg.teams = {{0.5, 0.7}, {0.5, 0.5}};
  cfg.repetitions = 2;
  cfg.train.episodes = 2000;
  cfg.base_seed = 4;
  const auto rows = heaviside_study(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.G_tilde.size(), 2u);
    EXPECT_NEAR(row.mean_G, 0.5 * (row.G_tilde[0] + row.G_tilde[1]), 1e-12);
    if (row.mean_G > 0.0) {
      ASSERT_TRUE(row.dispersion_pct.has_value());
      EXPECT_NEAR(*row.dispersion_pct, dispersion(row.G_tilde), 1e-12);
    }
  }
  ASSERT_TRUE(rows[0].weaker_abstains.has_value());
  EXPECT_EQ(*rows[0].weaker_abstains, rows[0].actions[0][0] == 0.0 && rows[0].actions[1][0] == 0.0);
  EXPECT_FALSE(rows[1].weaker_abstains.has_value());

  // Run (team t, repetition r) is seeded with mix_seed(base, t * reps + r).
  TrainConfig single = cfg.train;
  single.seed = mix_seed(4, 1);
  const auto direct =
      train(GameSpec::make({0.5, 0.7}, 1.0, EvaluationSpec::heaviside(10.0, 5.0)), single);
  EXPECT_EQ(rows[0].G_tilde[1], direct.learned_G);
}

TEST(Tune, ZeroBudgetReturnsTheDefaults) {
  TuneConfig cfg;
  const auto result = tune(cfg);
  EXPECT_EQ(result.k, 1000.0);
  EXPECT_EQ(result.tau, 0.1);
  EXPECT_FALSE(result.score.has_value());
  EXPECT_TRUE(result.trials.empty());
}

TEST(Tune, PicksTheBestTrialInsideTheRanges) {
  TuneConfig cfg;
  cfg.budget = 3;
  cfg.probes = {GameSpec::make({0.5, 0.7}, 1.0, EvaluationSpec::logistic(10.0, 2.0, 5.0))};
  cfg.train.episodes = 1000;
  cfg.seed = 2;
  const auto result = tune(cfg);
  ASSERT_EQ(result.trials.size(), 4u);
  EXPECT_EQ(result.trials[0].k, 1000.0);
  EXPECT_EQ(result.trials[0].tau, 0.1);
  double best = result.trials[0].score;
  for (const auto& t : result.trials) {
    EXPECT_GE(t.k, cfg.k_min);
    EXPECT_LE(t.k, cfg.k_max);
    EXPECT_GE(t.tau, cfg.tau_min);
    EXPECT_LE(t.tau, cfg.tau_max);
    best = std::min(best, t.score);
  }
  ASSERT_TRUE(result.score.has_value());
  EXPECT_EQ(*result.score, best);
}

TEST(Tune, RejectsEmptyProbeSet) {
  TuneConfig cfg;
  cfg.budget = 1;
  EXPECT_THROW(tune(cfg), ConfigError);
}

}  // namespace
}  // namespace teamgames
