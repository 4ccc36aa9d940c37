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


#include "teamgames/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>

#include <fmt/format.h>
#include <json.hpp>

#include "teamgames/error.hpp"

namespace teamgames {

namespace {

using nlohmann::json;

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("malformed JSON: {}", e.what()));
  }
}

void require_object(const json& j, std::string_view where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{} must be a JSON object", where));
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
}

template <class T>
T get(const json& j, const char* key, std::string_view where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("key '{}' in {} is missing or has the wrong type", key, where));
  }
}

template <class T>
void get_if(const json& j, const char* key, std::string_view where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

EvaluationSpec evaluation_from(const json& j, double default_b) {
  require_object(j, "evaluation");
  reject_unknown(j, {"kind", "d", "gamma", "b"}, "evaluation");
  EvaluationSpec spec;
  spec.b = default_b;
  if (j.contains("kind")) spec.kind = evaluation_kind_from_string(get<std::string>(j, "kind", "evaluation"));
  if (spec.kind == EvaluationKind::identity) spec = EvaluationSpec::identity();
  get_if(j, "d", "evaluation", spec.d);
  get_if(j, "gamma", "evaluation", spec.gamma);
  get_if(j, "b", "evaluation", spec.b);
  return spec;
}

json evaluation_to(const EvaluationSpec& spec) {
  return {{"kind", to_string(spec.kind)}, {"d", spec.d}, {"gamma", spec.gamma}, {"b", spec.b}};
}

GameSpec game_from(const json& j) {
  require_object(j, "game");
  reject_unknown(j,
                 {"n", "rho", "betas", "delta_t", "expertise", "leisure_capacity", "alpha",
                  "evaluation", "train"},
                 "game");
  GameSpec game;
  game.expertise = get<std::vector<double>>(j, "expertise", "game");
  game.rho = get<double>(j, "rho", "game");
  const std::size_t n = game.expertise.size();
  if (j.contains("n") && get<std::size_t>(j, "n", "game") != n)
    throw ConfigError("n does not match the length of expertise");
  game.betas.assign(n, 1.0);
  game.leisure_capacity.assign(n, 1.0);
  get_if(j, "betas", "game", game.betas);
  get_if(j, "leisure_capacity", "game", game.leisure_capacity);
  get_if(j, "delta_t", "game", game.delta_t);
  get_if(j, "alpha", "game", game.alpha);
  if (j.contains("evaluation")) game.evaluation = evaluation_from(j.at("evaluation"), 5.0);
  game.validate();
  return game;
}

json game_to(const GameSpec& game) {
  return {{"n", game.n()},
          {"rho", game.rho},
          {"betas", game.betas},
          {"delta_t", game.delta_t},
          {"expertise", game.expertise},
          {"leisure_capacity", game.leisure_capacity},
          {"alpha", game.alpha},
          {"evaluation", evaluation_to(game.evaluation)}};
}

TrainConfig train_from(const json& j, TrainConfig cfg) {
  require_object(j, "train");
  reject_unknown(j, {"episodes", "tau", "k", "arms", "anneal", "extraction", "tail_fraction"},
                 "train");
  get_if(j, "episodes", "train", cfg.episodes);
  get_if(j, "tau", "train", cfg.tau);
  get_if(j, "k", "train", cfg.k);
  get_if(j, "arms", "train", cfg.arms);
  get_if(j, "anneal", "train", cfg.anneal);
  get_if(j, "tail_fraction", "train", cfg.tail_fraction);
  if (j.contains("extraction"))
    cfg.extraction = extraction_from_string(get<std::string>(j, "extraction", "train"));
  cfg.validate();
  return cfg;
}

json train_to(const TrainConfig& cfg) {
  return {{"episodes", cfg.episodes},   {"tau", cfg.tau},
          {"k", cfg.k},                 {"arms", cfg.arms},
          {"anneal", cfg.anneal},       {"extraction", to_string(cfg.extraction)},
          {"tail_fraction", cfg.tail_fraction}};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string optional_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string joined(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += num(values[i]);
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

GameSpec game_from_json(std::string_view text) { return game_from(parse(text)); }

TrainConfig train_config_from_json(std::string_view text) { return train_from(parse(text), {}); }

SweepConfig sweep_config_from_json(std::string_view text) {
  const json j = parse(text);
  require_object(j, "sweep");
  reject_unknown(j,
                 {"expertise_values", "rho_values", "b_values", "repetitions", "evaluation",
                  "delta_t", "alpha", "train", "base_seed", "workers"},
                 "sweep");
  SweepConfig cfg;
  get_if(j, "expertise_values", "sweep", cfg.expertise_values);
  get_if(j, "rho_values", "sweep", cfg.rho_values);
  get_if(j, "b_values", "sweep", cfg.b_values);
  get_if(j, "repetitions", "sweep", cfg.repetitions);
  get_if(j, "delta_t", "sweep", cfg.delta_t);
  get_if(j, "alpha", "sweep", cfg.alpha);
  get_if(j, "base_seed", "sweep", cfg.base_seed);
  get_if(j, "workers", "sweep", cfg.workers);
  if (j.contains("evaluation")) {
    const json& e = j.at("evaluation");
    require_object(e, "evaluation");
    reject_unknown(e, {"kind", "d", "gamma"}, "sweep evaluation");
    if (e.contains("kind"))
      cfg.evaluation_kind = evaluation_kind_from_string(get<std::string>(e, "kind", "evaluation"));
    get_if(e, "d", "evaluation", cfg.d);
    get_if(e, "gamma", "evaluation", cfg.gamma);
  }
  if (j.contains("train")) cfg.train = train_from(j.at("train"), cfg.train);
  cfg.validate();
  return cfg;
}

HeavisideConfig heaviside_config_from_json(std::string_view text) {
  const json j = parse(text);
  require_object(j, "heaviside");
  reject_unknown(j,
                 {"expertise_values", "teams", "b", "d", "delta_t", "alpha", "repetitions", "train",
                  "base_seed", "workers"},
                 "heaviside");
  HeavisideConfig cfg;
  std::vector<double> levels{0.3, 0.5, 0.7, 0.9};
  get_if(j, "expertise_values", "heaviside", levels);
  cfg.teams = unordered_pairs(levels);
  get_if(j, "teams", "heaviside", cfg.teams);
  get_if(j, "b", "heaviside", cfg.b);
  get_if(j, "d", "heaviside", cfg.d);
  get_if(j, "delta_t", "heaviside", cfg.delta_t);
  get_if(j, "alpha", "heaviside", cfg.alpha);
  get_if(j, "repetitions", "heaviside", cfg.repetitions);
  get_if(j, "base_seed", "heaviside", cfg.base_seed);
  get_if(j, "workers", "heaviside", cfg.workers);
  if (j.contains("train")) cfg.train = train_from(j.at("train"), cfg.train);
  for (const auto& [p1, p2] : cfg.teams)
    GameSpec::make({p1, p2}, 1.0, EvaluationSpec::heaviside(cfg.d, cfg.b), cfg.delta_t, cfg.alpha)
        .validate();
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  return cfg;
}

TuneConfig tune_config_from_json(std::string_view text) {
  const json j = parse(text);
  require_object(j, "tune");
  reject_unknown(j, {"budget", "k_range", "tau_range", "probes", "train", "seed", "workers"},
                 "tune");
  TuneConfig cfg;
  get_if(j, "budget", "tune", cfg.budget);
  get_if(j, "seed", "tune", cfg.seed);
  get_if(j, "workers", "tune", cfg.workers);
  if (j.contains("k_range")) {
    const auto r = get<std::vector<double>>(j, "k_range", "tune");
    if (r.size() != 2) throw ConfigError("k_range must hold two numbers");
    cfg.k_min = r[0];
    cfg.k_max = r[1];
  }
  if (j.contains("tau_range")) {
    const auto r = get<std::vector<double>>(j, "tau_range", "tune");
    if (r.size() != 2) throw ConfigError("tau_range must hold two numbers");
    cfg.tau_min = r[0];
    cfg.tau_max = r[1];
  }
  if (j.contains("train")) cfg.train = train_from(j.at("train"), cfg.train);
  if (j.contains("probes")) {
    const json& probes = j.at("probes");
    if (!probes.is_array()) throw ConfigError("probes must be an array of games");
    for (const auto& p : probes) cfg.probes.push_back(game_from(p));
  }
  return cfg;
}

std::string to_json(const GameSpec& game) { return dump(game_to(game)); }

std::string to_json(const TrainConfig& config) { return dump(train_to(config)); }

std::string equilibria_to_json(const GameSpec& game, std::span<const EquilibriumResult> results) {
  json list = json::array();
  for (const auto& r : results) {
    list.push_back({{"actions", r.actions},
                    {"gifts", r.gifts},
                    {"aggregate_G", r.aggregate_G},
                    {"score", r.score},
                    {"active_set", r.active_set},
                    {"residual", r.residual}});
  }
  return dump({{"game", game_to(game)},
               {"task_type", to_string(game.task_type())},
               {"equilibria", list}});
}

std::string to_json(const LearnedOutcome& outcome) {
  json j = {{"greedy_actions", outcome.greedy_actions},
            {"learned_G", outcome.learned_G},
            {"learned_score", outcome.learned_score},
            {"episodes", outcome.episodes},
            {"seed", outcome.seed}};
  if (!outcome.q_snapshots.empty()) {
    json q = json::array();
    for (const auto& agent : outcome.q_snapshots) q.push_back(agent.q_values);
    j["q_snapshots"] = q;
  }
  return dump(j);
}

std::string to_json(const RegressionReport& report) {
  return dump({{"slope", report.slope},
               {"intercept", report.intercept},
               {"r_squared", report.r_squared},
               {"n_points", report.n_points},
               {"residuals", report.residuals}});
}

std::string to_json(std::span<const HeavisideRow> rows) {
  json list = json::array();
  for (const auto& r : rows) {
    list.push_back({{"team", {r.p1, r.p2}},
                    {"G_tilde", r.G_tilde},
                    {"actions", r.actions},
                    {"mean_G", r.mean_G},
                    {"dispersion_pct", optional_number(r.dispersion_pct)},
                    {"weaker_abstains", r.weaker_abstains ? json(*r.weaker_abstains) : json(nullptr)}});
  }
  return dump({{"teams", list}});
}

std::string to_json(const TuneResult& result) {
  json trials = json::array();
  for (const auto& t : result.trials) trials.push_back({{"k", t.k}, {"tau", t.tau}, {"score", t.score}});
  return dump({{"k", result.k},
               {"tau", result.tau},
               {"score", optional_number(result.score)},
               {"trials", trials}});
}

std::string equilibria_csv(std::span<const EquilibriumResult> results) {
  std::string out = "index,aggregate_G,score,residual,actions,gifts\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out += fmt::format("{},{},{},{},{},{}\n", i, num(r.aggregate_G), num(r.score), num(r.residual),
                       joined(r.actions), joined(r.gifts));
  }
  return out;
}

std::string learned_csv(const LearnedOutcome& outcome) {
  std::string out = "seed,episodes,learned_G,learned_score,greedy_actions\n";
  out += fmt::format("{},{},{},{},{}\n", outcome.seed, outcome.episodes, num(outcome.learned_G),
                     num(outcome.learned_score), joined(outcome.greedy_actions));
  return out;
}

std::string records_csv(std::span<const ExperimentRecord> records) {
  std::string out = "index,p1,p2,rho,b,repetition,seed,G_hat_set,G_tilde,a1,a2,skip_reason\n";
  for (const auto& r : records) {
    std::string reason = r.skip_reason;
    std::replace(reason.begin(), reason.end(), '"', '\'');
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},\"{}\"\n", r.index, num(r.p1), num(r.p2),
                       num(r.rho), num(r.b), r.repetition, r.seed, joined(r.G_hat), num(r.G_tilde),
                       num(r.learned_actions.at(0)), num(r.learned_actions.at(1)), reason);
  }
  return out;
}

std::string heatmap_csv(std::span<const HeatmapCell> cells) {
  std::string out = "p1,p2,G_tilde,passed\n";
  for (const auto& c : cells) {
    const std::string passed = c.passed ? (*c.passed ? "1" : "0") : "";
    out += fmt::format("{},{},{},{}\n", num(c.p1), num(c.p2), optional_num(c.G_tilde), passed);
  }
  return out;
}

std::string strategy_csv(std::span<const StrategyRow> rows) {
  std::string out = "p1,p2,repetition,a1_pct,a2_pct\n";
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.actions_pct.size(); ++k)
      out += fmt::format("{},{},{},{},{}\n", num(r.p1), num(r.p2), k, r.actions_pct[k].first,
                         r.actions_pct[k].second);
  return out;
}

std::string increment_csv(std::span<const IncrementRow> rows) {
  std::string out = "expertise,mean_actions,increase_pct\n";
  for (const auto& r : rows) {
    std::string inc;
    for (std::size_t k = 0; k < r.increase_pct.size(); ++k) {
      if (k > 0) inc += ';';
      inc += optional_num(r.increase_pct[k]);
    }
    out += fmt::format("{},{},{}\n", num(r.expertise), joined(r.mean_action), inc);
  }
  return out;
}

std::string heaviside_csv(std::span<const HeavisideRow> rows) {
  std::string out = "p1,p2,mean_G,dispersion_pct,weaker_abstains,G_tilde\n";
  for (const auto& r : rows) {
    const std::string abstains =
        r.weaker_abstains ? (*r.weaker_abstains ? "1" : "0") : std::string();
    out += fmt::format("{},{},{},{},{},{}\n", num(r.p1), num(r.p2), num(r.mean_G),
                       optional_num(r.dispersion_pct), abstains, joined(r.G_tilde));
  }
  return out;
}

}  // namespace teamgames
