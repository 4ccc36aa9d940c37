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


#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "teamgames/equilibrium.hpp"
#include "teamgames/error.hpp"
#include "teamgames/experiments.hpp"
#include "teamgames/serialization.hpp"
#include "teamgames/simulator.hpp"

namespace teamgames::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read input file '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out << text;
}

fs::path output_dir(const CliConfig& config) {
  fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create output directory '{}'", dir.string()));
  return dir;
}

void set_path(json& root, const std::string& key, const json& value) {
  json* node = &root;
  std::size_t start = 0;
  for (std::size_t dot = key.find('.'); dot != std::string::npos; dot = key.find('.', start)) {
    const std::string part = key.substr(start, dot - start);
    if (!node->is_object()) throw ConfigError(fmt::format("override '{}' crosses a non-object", key));
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
  if (!node->is_object()) throw ConfigError(fmt::format("override '{}' crosses a non-object", key));
  (*node)[key.substr(start)] = value;
}

// Flags that map onto the "train" object of a spec.
void apply_train_flags(json& spec, const CliConfig& config) {
  if (config.episodes) set_path(spec, "train.episodes", *config.episodes);
  if (config.tau) set_path(spec, "train.tau", *config.tau);
  if (config.k) set_path(spec, "train.k", *config.k);
}

std::size_t workers_of(const CliConfig& config) { return config.workers.value_or(1); }

std::string rho_b_suffix(double rho, double b) { return fmt::format("{}_{}", rho, b); }

}  // namespace

std::string load_spec(const CliConfig& config) {
  json spec = json::object();
  if (!config.input.empty()) {
    try {
      spec = json::parse(read_file(config.input));
    } catch (const json::parse_error& e) {
      throw ConfigError(fmt::format("malformed JSON in '{}': {}", config.input, e.what()));
    }
  }
  if (!spec.is_object()) throw ConfigError("input spec must be a JSON object");
  for (const auto& item : config.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError(fmt::format("override '{}' is not of the form key=value", item));
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    set_path(spec, key, value);
  }
  return spec.dump();
}

int cmd_solve(const CliConfig& config, std::ostream& out, std::ostream& err) {
  json spec = json::parse(load_spec(config));
  spec.erase("train");
  const GameSpec game = game_from_json(spec.dump());
  if (!game.evaluation.is_smooth()) {
    err << "evaluation not smooth; use learn\n";
    return kConfigError;
  }
  const auto dir = output_dir(config);
  std::vector<EquilibriumResult> results;
  try {
    results = solve_equilibria(game);
  } catch (const NoEquilibriumFound& e) {
    err << "no equilibrium found: " << e.what() << "\n";
    if (config.verbose) err << e.trace();
    return kEmptyResult;
  }
  if (config.format == "csv") {
    write_file(dir / "equilibria.csv", equilibria_csv(results));
  } else {
    write_file(dir / "equilibria.json", equilibria_to_json(game, results));
  }
  out << fmt::format("{} equilibri{} ({} task)\n", results.size(),
                     results.size() == 1 ? "um" : "a", to_string(game.task_type()));
  for (const auto& r : results) {
    out << fmt::format("  G = {:.6f}  actions =", r.aggregate_G);
    for (double a : r.actions) out << fmt::format(" {:.0f}%", a * 100.0);
    out << "\n";
  }
  return results.empty() ? kEmptyResult : kSuccess;
}

int cmd_learn(const CliConfig& config, std::ostream& out, std::ostream& err) {
  json spec = json::parse(load_spec(config));
  apply_train_flags(spec, config);
  TrainConfig train_cfg;
  if (spec.contains("train")) train_cfg = train_config_from_json(spec.at("train").dump());
  spec.erase("train");
  const GameSpec game = game_from_json(spec.dump());
  train_cfg.seed = config.seed.value_or(0);
  train_cfg.trace = config.verbose;
  const auto dir = output_dir(config);
  const auto outcome = train(game, train_cfg);
  if (config.format == "csv") {
    write_file(dir / "learned.csv", learned_csv(outcome));
  } else {
    write_file(dir / "learned.json", to_json(outcome));
  }
  if (config.verbose) {
    write_file(dir / "trace.csv", trace_csv(outcome));
    err << fmt::format("wrote {} trace rows\n", outcome.trace.size());
  }
  out << fmt::format("G~ = {:.6f}  actions =", outcome.learned_G);
  for (double a : outcome.greedy_actions) out << fmt::format(" {:.0f}%", a * 100.0);
  out << "\n";
  return kSuccess;
}

int cmd_sweep(const CliConfig& config, std::ostream& out, std::ostream& err) {
  json spec = json::parse(load_spec(config));
  apply_train_flags(spec, config);
  SweepConfig sweep = sweep_config_from_json(spec.dump());
  if (config.seed) sweep.base_seed = *config.seed;
  if (config.workers) sweep.workers = *config.workers;
  const auto dir = output_dir(config);
  const auto records = run_sweep(sweep);
  write_file(dir / "records.csv", records_csv(records));

  const auto pairs = regression_pairs(records);
  try {
    const auto report = fit_regression(pairs);
    write_file(dir / "regression.json", to_json(report));
    out << fmt::format("{} records, regression slope {:.4f} intercept {:.4f} R^2 {:.4f}\n",
                       records.size(), report.slope, report.intercept, report.r_squared);
  } catch (const DegenerateInput& e) {
    write_file(dir / "regression.json", json({{"error", e.what()}}).dump(2) + "\n");
    out << fmt::format("{} records, regression unavailable: {}\n", records.size(), e.what());
  }
  for (double rho : sweep.rho_values) {
    for (double b : sweep.b_values) {
      const auto suffix = rho_b_suffix(rho, b);
      write_file(dir / fmt::format("heatmap_{}.csv", suffix), heatmap_csv(heatmap_table(records, rho, b)));
      write_file(dir / fmt::format("strategy_{}.csv", suffix),
                 strategy_csv(strategy_table(records, rho, b)));
    }
    write_file(dir / fmt::format("increment_{}.csv", rho), increment_csv(increment_table(records, rho)));
  }
  if (config.verbose) {
    std::size_t skipped = 0;
    for (const auto& r : records) skipped += !r.skip_reason.empty();
    err << fmt::format("{} of {} cells have no equilibrium\n", skipped, records.size());
  }
  return records.empty() ? kEmptyResult : kSuccess;
}

int cmd_heaviside(const CliConfig& config, std::ostream& out, std::ostream& /*err*/) {
  json spec = json::parse(load_spec(config));
  apply_train_flags(spec, config);
  HeavisideConfig study = heaviside_config_from_json(spec.dump());
  if (config.seed) study.base_seed = *config.seed;
  if (config.workers) study.workers = *config.workers;
  const auto dir = output_dir(config);
  const auto rows = heaviside_study(study);
  if (config.format == "csv") {
    write_file(dir / "heaviside.csv", heaviside_csv(rows));
  } else {
    write_file(dir / "heaviside.json", to_json(rows));
  }
  for (const auto& r : rows) {
    out << fmt::format("({}, {}) mean G {:.4f} dispersion {}\n", r.p1, r.p2, r.mean_G,
                       r.dispersion_pct ? fmt::format("{:.2f}%", *r.dispersion_pct) : "n/a");
  }
  return rows.empty() ? kEmptyResult : kSuccess;
}

int cmd_tune(const CliConfig& config, std::ostream& out, std::ostream& /*err*/) {
  json spec = json::parse(load_spec(config));
  apply_train_flags(spec, config);
  TuneConfig tune_cfg = tune_config_from_json(spec.dump());
  if (config.seed) tune_cfg.seed = *config.seed;
  if (config.workers) tune_cfg.workers = *config.workers;
  const auto dir = output_dir(config);
  const auto result = tune(tune_cfg);
  write_file(dir / "tune.json", to_json(result));
  out << fmt::format("k = {}  tau = {}\n", result.k, result.tau);
  return kSuccess;
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (config.format != "json" && config.format != "csv") {
    err << "error: --format must be json or csv\n";
    return kConfigError;
  }
  try {
    if (config.subcommand == "solve") return cmd_solve(config, out, err);
    if (config.subcommand == "learn") return cmd_learn(config, out, err);
    if (config.subcommand == "sweep") return cmd_sweep(config, out, err);
    if (config.subcommand == "heaviside") return cmd_heaviside(config, out, err);
    if (config.subcommand == "tune") return cmd_tune(config, out, err);
    err << fmt::format("error: unknown subcommand '{}'\n", config.subcommand);
    return kConfigError;
  } catch (const NoEquilibriumFound& e) {
    err << "no equilibrium found: " << e.what() << "\n";
    return kEmptyResult;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace teamgames::cli
