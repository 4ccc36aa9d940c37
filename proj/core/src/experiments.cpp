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
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "teamgames/error.hpp"
#include "teamgames/rng.hpp"

namespace teamgames {

namespace {

struct Cell {
  double p1;
  double p2;
  double rho;
  double b;
  std::size_t repetition;
};

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

double nearest(std::span<const double> values, double target) {
  double best = values.front();
  for (double v : values)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

// Levels of the expertise grid present in the records, ascending.
std::vector<double> levels_of(std::span<const ExperimentRecord> records) {
  std::vector<double> out;
  for (const auto& r : records)
    for (double p : {r.p1, r.p2})
      if (std::none_of(out.begin(), out.end(), [&](double q) { return same(p, q); }))
        out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

int percent(double action) { return static_cast<int>(std::lround(action * 100.0)); }

}  // namespace

void SweepConfig::validate() const {
  for (double p : expertise_values)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("expertise values must lie in [0, 1]");
  for (double rho : rho_values)
    if (rho == 0.0 || !std::isfinite(rho)) throw ConfigError("rho values must be non-zero");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  for (double b : b_values) cell_evaluation(*this, b).validate();
  if (!(delta_t > 0.0)) throw ConfigError("delta_t must be > 0");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
  train.validate();
}

EvaluationSpec cell_evaluation(const SweepConfig& config, double b) {
  switch (config.evaluation_kind) {
    case EvaluationKind::logistic:
      return EvaluationSpec::logistic(config.d, config.gamma, b);
    case EvaluationKind::heaviside:
      return EvaluationSpec::heaviside(config.d, b);
    case EvaluationKind::identity:
      break;
  }
  return EvaluationSpec::identity();
}

GameSpec cell_game(const SweepConfig& config, double p1, double p2, double rho, double b) {
  return GameSpec::make({p1, p2}, rho, cell_evaluation(config, b), config.delta_t, config.alpha);
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<Cell> cells;
  const auto& levels = config.expertise_values;
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i; j < levels.size(); ++j)
      for (double rho : config.rho_values)
        for (double b : config.b_values)
          for (std::size_t rep = 0; rep < config.repetitions; ++rep)
            cells.push_back({levels[i], levels[j], rho, b, rep});

  std::vector<ExperimentRecord> records(cells.size());
  parallel_for(cells.size(), config.workers, [&](std::size_t idx) {
    const Cell& c = cells[idx];
    ExperimentRecord rec;
    rec.index = idx;
    rec.p1 = c.p1;
    rec.p2 = c.p2;
    rec.rho = c.rho;
    rec.b = c.b;
    rec.repetition = c.repetition;
    rec.seed = mix_seed(config.base_seed, idx);

    const GameSpec game = cell_game(config, c.p1, c.p2, c.rho, c.b);
    try {
      for (const auto& eq : solve_equilibria(game)) {
        rec.G_hat.push_back(eq.aggregate_G);
        rec.equilibrium_actions.push_back(eq.actions);
      }
      if (rec.G_hat.empty()) rec.skip_reason = "no equilibrium found";
    } catch (const UnsupportedEvaluation&) {
      rec.skip_reason = "evaluation not smooth";
    } catch (const Error& e) {
      rec.skip_reason = e.what();
    }

    TrainConfig cfg = config.train;
    cfg.seed = rec.seed;
    cfg.keep_q = false;
    cfg.trace = false;
    const auto learned = train(game, cfg);
    rec.learned_actions = learned.greedy_actions;
    rec.G_tilde = learned.learned_G;
    records[idx] = std::move(rec);
  });
  return records;
}

std::vector<std::pair<double, double>> regression_pairs(std::span<const ExperimentRecord> records) {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : records)
    if (!r.G_hat.empty()) out.emplace_back(nearest(r.G_hat, r.G_tilde), r.G_tilde);
  return out;
}

RegressionReport fit_regression(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) throw DegenerateInput("regression needs at least two points");
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0)) throw DegenerateInput("regression is undefined when every G_hat is equal");

  RegressionReport rep;
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  rep.n_points = pairs.size();
  double ss_res = 0.0;
  for (const auto& [x, y] : pairs) {
    const double e = y - (rep.intercept + rep.slope * x);
    rep.residuals.push_back(e);
    ss_res += e * e;
  }
  rep.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return rep;
}

std::vector<HeatmapCell> heatmap_table(std::span<const ExperimentRecord> records, double rho,
                                       double b) {
  const auto levels = levels_of(records);
  std::vector<HeatmapCell> out;
  for (double p1 : levels) {
    for (double p2 : levels) {
      HeatmapCell cell{p1, p2, std::nullopt, std::nullopt};
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& r : records) {
        if (!same(r.rho, rho) || !same(r.b, b)) continue;
        const bool match = (same(r.p1, p1) && same(r.p2, p2)) || (same(r.p1, p2) && same(r.p2, p1));
        if (!match) continue;
        sum += r.G_tilde;
        ++count;
      }
      if (count > 0) {
        cell.G_tilde = sum / static_cast<double>(count);
        cell.passed = *cell.G_tilde >= b;
      }
      out.push_back(cell);
    }
  }
  return out;
}

std::vector<StrategyRow> strategy_table(std::span<const ExperimentRecord> records, double rho,
                                        double b) {
  std::vector<StrategyRow> out;
  for (const auto& r : records) {
    if (!same(r.rho, rho) || !same(r.b, b)) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const StrategyRow& row) { return same(row.p1, r.p1) && same(row.p2, r.p2); });
    if (it == out.end()) {
      out.push_back({r.p1, r.p2, {}});
      it = std::prev(out.end());
    }
    it->actions_pct.emplace_back(percent(r.learned_actions.at(0)), percent(r.learned_actions.at(1)));
  }
  return out;
}

std::vector<IncrementRow> increment_table(std::span<const ExperimentRecord> records, double rho) {
  std::vector<double> bs;
  for (const auto& r : records)
    if (same(r.rho, rho) && std::none_of(bs.begin(), bs.end(), [&](double v) { return same(v, r.b); }))
      bs.push_back(r.b);
  std::sort(bs.begin(), bs.end());

  std::vector<IncrementRow> out;
  for (double p : levels_of(records)) {
    IncrementRow row;
    row.expertise = p;
    for (double b : bs) {
      // One sample per (team, repetition) containing the level.
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& r : records) {
        if (!same(r.rho, rho) || !same(r.b, b)) continue;
        const bool first = same(r.p1, p);
        const bool second = same(r.p2, p);
        if (first && second) {
          sum += 0.5 * (r.learned_actions[0] + r.learned_actions[1]);
        } else if (first) {
          sum += r.learned_actions[0];
        } else if (second) {
          sum += r.learned_actions[1];
        } else {
          continue;
        }
        ++count;
      }
      row.mean_action.push_back(count > 0 ? sum / static_cast<double>(count) : 0.0);
    }
    for (std::size_t k = 1; k < row.mean_action.size(); ++k) {
      const double lo = row.mean_action[k - 1];
      if (lo > 0.0) {
        row.increase_pct.push_back((row.mean_action[k] - lo) / lo * 100.0);
      } else {
        row.increase_pct.push_back(std::nullopt);
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::pair<double, double>> unordered_pairs(std::span<const double> levels) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i; j < levels.size(); ++j) out.emplace_back(levels[i], levels[j]);
  return out;
}

std::vector<HeavisideRow> heaviside_study(const HeavisideConfig& config) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const auto eval = EvaluationSpec::heaviside(config.d, config.b);
  eval.validate();
  config.train.validate();

  const std::size_t reps = config.repetitions;
  std::vector<LearnedOutcome> runs(config.teams.size() * reps);
  parallel_for(runs.size(), config.workers, [&](std::size_t idx) {
    const auto& [p1, p2] = config.teams[idx / reps];
    TrainConfig cfg = config.train;
    cfg.seed = mix_seed(config.base_seed, idx);
    runs[idx] = train(GameSpec::make({p1, p2}, 1.0, eval, config.delta_t, config.alpha), cfg);
  });

  std::vector<HeavisideRow> out;
  for (std::size_t t = 0; t < config.teams.size(); ++t) {
    HeavisideRow row;
    std::tie(row.p1, row.p2) = config.teams[t];
    for (std::size_t rep = 0; rep < reps; ++rep) {
      const auto& run = runs[t * reps + rep];
      row.G_tilde.push_back(run.learned_G);
      row.actions.push_back(run.greedy_actions);
    }
    double sum = 0.0;
    for (double G : row.G_tilde) sum += G;
    row.mean_G = sum / static_cast<double>(reps);
    if (row.mean_G > 0.0) row.dispersion_pct = dispersion(row.G_tilde);
    if (!same(row.p1, row.p2)) {
      const std::size_t weaker = row.p1 < row.p2 ? 0 : 1;
      row.weaker_abstains = std::all_of(row.actions.begin(), row.actions.end(),
                                        [&](const auto& a) { return a[weaker] == 0.0; });
    }
    out.push_back(std::move(row));
  }
  return out;
}

TuneResult tune(const TuneConfig& config) {
  TuneResult result;
  result.k = config.train.k;
  result.tau = config.train.tau;
  if (config.budget == 0) return result;
  if (config.probes.empty()) throw ConfigError("tune needs at least one probe game");
  if (!(config.k_min > 0.0 && config.k_min <= config.k_max)) throw ConfigError("invalid k range");
  if (!(config.tau_min > 0.0 && config.tau_min <= config.tau_max))
    throw ConfigError("invalid tau range");

  std::vector<std::vector<double>> outcomes(config.probes.size());
  for (std::size_t i = 0; i < config.probes.size(); ++i)
    for (const auto& eq : solve_equilibria(config.probes[i])) outcomes[i].push_back(eq.aggregate_G);

  // Trial 0 is the incumbent; the rest are drawn from the search ranges.
  Rng rng(config.seed);
  std::vector<TuneTrial> trials(config.budget + 1);
  trials[0] = {config.train.k, config.train.tau, 0.0};
  const double log_lo = std::log(config.k_min);
  const double log_hi = std::log(config.k_max);
  for (std::size_t t = 1; t < trials.size(); ++t) {
    trials[t].k = std::exp(log_lo + (log_hi - log_lo) * rng.uniform());
    trials[t].tau = config.tau_min + (config.tau_max - config.tau_min) * rng.uniform();
  }

  const std::size_t probes = config.probes.size();
  std::vector<double> errors(trials.size() * probes, 0.0);
  parallel_for(errors.size(), config.workers, [&](std::size_t idx) {
    const std::size_t t = idx / probes;
    const std::size_t i = idx % probes;
    if (outcomes[i].empty()) return;
    TrainConfig cfg = config.train;
    cfg.k = trials[t].k;
    cfg.tau = trials[t].tau;
    cfg.seed = mix_seed(config.seed, i);
    const auto learned = train(config.probes[i], cfg);
    errors[idx] = std::abs(learned.learned_G - nearest(outcomes[i], learned.learned_G));
  });

  std::size_t best = 0;
  for (std::size_t t = 0; t < trials.size(); ++t) {
    double sum = 0.0;
    for (std::size_t i = 0; i < probes; ++i) sum += errors[t * probes + i];
    trials[t].score = sum / static_cast<double>(probes);
    if (trials[t].score < trials[best].score) best = t;
  }
  result.k = trials[best].k;
  result.tau = trials[best].tau;
  result.score = trials[best].score;
  result.trials = std::move(trials);
  return result;
}

}  // namespace teamgames
