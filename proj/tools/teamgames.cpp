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


// teamgames: solve, learn and sweep teamwork games from the command line.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

std::size_t default_workers() {
  if (const char* env = std::getenv("TEAMGAMES_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid TEAMGAMES_WORKERS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria and multi-armed bandit learning for teamwork games"};
  app.require_subcommand(1);

  teamgames::cli::CliConfig config;
  std::size_t workers = default_workers();
  std::uint64_t episodes = 0;
  double tau = 0.0;
  double k = 0.0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "JSON spec (defaults apply when omitted)")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--output-dir", config.output_dir, "Directory for output files")
        ->capture_default_str();
    sub->add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--seed", seed, "Base random seed");
    sub->add_option("--workers", workers, "Worker threads (default: TEAMGAMES_WORKERS or cores)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--set", config.overrides, "Override an input value: key=value (repeatable)");
    sub->add_option("--episodes", episodes, "Training episodes")->check(CLI::PositiveNumber);
    sub->add_option("--tau", tau, "Boltzmann temperature")->check(CLI::PositiveNumber);
    sub->add_option("--k", k, "Learning-rate schedule constant")->check(CLI::PositiveNumber);
    sub->add_flag("-v,--verbose", config.verbose, "Progress on stderr; learn also writes trace.csv");
  };

  for (const auto& [name, help] : {
           std::pair{"solve", "Compute every pure Nash equilibrium of a game"},
           std::pair{"learn", "Train one bandit per player and report the learned strategies"},
           std::pair{"sweep", "Solve and train a grid of teams, task types and thresholds"},
           std::pair{"heaviside", "Repeated training under a pass/fail evaluation"},
           std::pair{"tune", "Random search over the learning-rate constant and temperature"}}) {
    add_common(app.add_subcommand(name, help));
  }

  CLI11_PARSE(app, argc, argv);

  const CLI::App* sub = app.get_subcommands().front();
  config.subcommand = sub->get_name();
  config.workers = workers;
  if (sub->count("--seed")) config.seed = seed;
  if (sub->count("--episodes")) config.episodes = episodes;
  if (sub->count("--tau")) config.tau = tau;
  if (sub->count("--k")) config.k = k;
  return teamgames::cli::run(config, std::cout, std::cerr);
}
