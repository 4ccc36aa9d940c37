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


#ifndef TEAMGAMES_TOOLS_CLI_HPP
#define TEAMGAMES_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace teamgames::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kEmptyResult = 2 };

struct CliConfig {
  std::string subcommand;
  /// JSON spec; empty means "{}" (all defaults).
  std::string input;
  std::string output_dir = ".";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  /// "key=value" pairs; dotted keys address nested objects and values are
  /// read as JSON when they parse, as strings otherwise.
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> episodes;
  std::optional<double> tau;
  std::optional<double> k;
  bool verbose = false;
};

/// Reads the input spec and applies the overrides. Returns JSON text.
std::string load_spec(const CliConfig& config);

int cmd_solve(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_learn(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_heaviside(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_tune(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on `config.subcommand`, mapping library errors to exit codes.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace teamgames::cli

#endif  // TEAMGAMES_TOOLS_CLI_HPP
