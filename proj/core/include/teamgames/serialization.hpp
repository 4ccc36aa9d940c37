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


// JSON and CSV forms of the library types. JSON doubles are written in
// shortest round-trip form and CSV doubles with 17 significant digits, so
// every output is reproducible byte for byte and parses back exactly.

#ifndef TEAMGAMES_SERIALIZATION_HPP
#define TEAMGAMES_SERIALIZATION_HPP

#include <span>
#include <string>
#include <string_view>

#include "teamgames/equilibrium.hpp"
#include "teamgames/experiments.hpp"
#include "teamgames/game.hpp"
#include "teamgames/simulator.hpp"

namespace teamgames {

/// Parsers throw ConfigError on malformed JSON, on a wrong value type and on
/// unknown keys, naming the offending key. Parsed values are validated.
GameSpec game_from_json(std::string_view text);
TrainConfig train_config_from_json(std::string_view text);
SweepConfig sweep_config_from_json(std::string_view text);
HeavisideConfig heaviside_config_from_json(std::string_view text);
TuneConfig tune_config_from_json(std::string_view text);

std::string to_json(const GameSpec& game);
std::string to_json(const TrainConfig& config);
std::string equilibria_to_json(const GameSpec& game, std::span<const EquilibriumResult> results);
std::string to_json(const LearnedOutcome& outcome);
std::string to_json(const RegressionReport& report);
std::string to_json(std::span<const HeavisideRow> rows);
std::string to_json(const TuneResult& result);

std::string equilibria_csv(std::span<const EquilibriumResult> results);
std::string learned_csv(const LearnedOutcome& outcome);
std::string records_csv(std::span<const ExperimentRecord> records);
std::string heatmap_csv(std::span<const HeatmapCell> cells);
std::string strategy_csv(std::span<const StrategyRow> rows);
std::string increment_csv(std::span<const IncrementRow> rows);
std::string heaviside_csv(std::span<const HeavisideRow> rows);

}  // namespace teamgames

#endif  // TEAMGAMES_SERIALIZATION_HPP
