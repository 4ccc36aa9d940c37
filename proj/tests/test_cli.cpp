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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace teamgames::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("teamgames_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_spec(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  CliConfig config(const std::string& subcommand, const std::string& input = "") {
    CliConfig cfg;
    cfg.subcommand = subcommand;
    cfg.input = input;
    cfg.output_dir = (dir_ / "out").string();
    return cfg;
  }

  int invoke(const CliConfig& cfg) {
    out_.str("");
    err_.str("");
    return run(cfg, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SolveAdditivePresetWritesOneEquilibrium) {
  const auto input = write_spec("game.json", R"({"rho": 1, "expertise": [1, 1]})");
  ASSERT_EQ(invoke(config("solve", input)), kSuccess) << err_.str();
  const auto j = json::parse(slurp(dir_ / "out" / "equilibria.json"));
  ASSERT_EQ(j["equilibria"].size(), 1u);
  for (const auto& a : j["equilibria"][0]["actions"]) EXPECT_EQ(std::lround(a.get<double>() * 100.0), 30);
}

TEST_F(CliTest, SolveDisjunctivePresetFindsBothSoloists) {
  auto cfg = config("solve");
  cfg.overrides = {"rho=500", "expertise=[1,1]", "evaluation.b=5"};
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  const auto j = json::parse(slurp(dir_ / "out" / "equilibria.json"));
  EXPECT_EQ(j["equilibria"].size(), 2u);
  EXPECT_EQ(j["task_type"], "disjunctive");
}

TEST_F(CliTest, SolveCsvFormat) {
  auto cfg = config("solve");
  cfg.overrides = {"rho=1", "expertise=[0.3,0.8]", "evaluation.b=7"};
  cfg.format = "csv";
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  const auto csv = slurp(dir_ / "out" / "equilibria.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,aggregate_G,score,residual,actions,gifts");
  EXPECT_NE(out_.str().find("33% 75%"), std::string::npos) << out_.str();
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  auto cfg = config("solve");
  cfg.overrides = {"rho=0", "expertise=[0.5,0.5]"};
  EXPECT_EQ(invoke(cfg), kConfigError);
  EXPECT_NE(err_.str().find("rho"), std::string::npos);

  cfg.overrides = {"rho=1", "expertise=[0.5,0.5]", "colour=red"};
  EXPECT_EQ(invoke(cfg), kConfigError);
  EXPECT_NE(err_.str().find("unknown key 'colour'"), std::string::npos);

  cfg.overrides = {"novalue"};
  EXPECT_EQ(invoke(cfg), kConfigError);

  EXPECT_EQ(invoke(config("solve", (dir_ / "missing.json").string())), kConfigError);
  EXPECT_EQ(invoke(config("solve", write_spec("bad.json", "{"))), kConfigError);
  EXPECT_EQ(invoke(config("dance")), kConfigError);

  auto fmt_cfg = config("solve");
  fmt_cfg.format = "xml";
  EXPECT_EQ(invoke(fmt_cfg), kConfigError);
}

TEST_F(CliTest, SolveRejectsStepEvaluation) {
  auto cfg = config("solve");
  cfg.overrides = {"rho=1", "expertise=[0.5,0.7]", "evaluation.kind=heaviside"};
  EXPECT_EQ(invoke(cfg), kConfigError);
  EXPECT_EQ(err_.str(), "evaluation not smooth; use learn\n");
}

TEST_F(CliTest, SolveUnsupportedRegimeIsAConfigError) {
  auto cfg = config("solve");
  cfg.overrides = {"rho=3", "expertise=[0.3,0.9]", "evaluation.b=7"};
  EXPECT_EQ(invoke(cfg), kConfigError);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, LearnWritesOutcomeAndOptionalTrace) {
  auto cfg = config("learn");
  cfg.overrides = {"rho=1", "expertise=[0.5,0.7]", "evaluation.kind=heaviside"};
  cfg.episodes = 50;
  cfg.seed = 5;
  cfg.verbose = true;
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  const auto j = json::parse(slurp(dir_ / "out" / "learned.json"));
  EXPECT_EQ(j["episodes"], 50);
  EXPECT_EQ(j["seed"], 5);
  const auto trace = slurp(dir_ / "out" / "trace.csv");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 51);
}

TEST_F(CliTest, LearnSingleEpisodeAndTrainFlags) {
  auto cfg = config("learn");
  cfg.overrides = {"rho=1", "expertise=[0.5,0.7]", "train.anneal=true"};
  cfg.episodes = 1;
  cfg.tau = 0.3;
  cfg.k = 20;
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "out" / "trace.csv"));
  cfg.tau = -1.0;
  EXPECT_EQ(invoke(cfg), kConfigError);
}

TEST_F(CliTest, SweepOutputsAreIndependentOfWorkers) {
  const auto input = write_spec("sweep.json", R"({"expertise_values": [0.3, 0.9], "rho_values": [-10, 10],
                                                   "b_values": [5], "train": {"episodes": 300}})");
  auto cfg = config("sweep", input);
  cfg.seed = 3;
  cfg.workers = 1;
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  const auto serial = slurp(dir_ / "out" / "records.csv");
  for (const char* name : {"regression.json", "heatmap_-10_5.csv", "strategy_10_5.csv", "increment_-10.csv"})
    EXPECT_TRUE(fs::exists(dir_ / "out" / name)) << name;
  cfg.workers = 4;
  ASSERT_EQ(invoke(cfg), kSuccess);
  EXPECT_EQ(slurp(dir_ / "out" / "records.csv"), serial);
  EXPECT_EQ(std::count(serial.begin(), serial.end(), '\n'), 7);
}

TEST_F(CliTest, HeavisideStudyWritesRows) {
  auto cfg = config("heaviside");
  cfg.overrides = {"teams=[[0.5,0.7]]", "repetitions=2"};
  cfg.episodes = 200;
  cfg.format = "csv";
  ASSERT_EQ(invoke(cfg), kSuccess) << err_.str();
  const auto csv = slurp(dir_ / "out" / "heaviside.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST_F(CliTest, TuneWithZeroBudgetKeepsDefaults) {
  ASSERT_EQ(invoke(config("tune")), kSuccess) << err_.str();
  const auto j = json::parse(slurp(dir_ / "out" / "tune.json"));
  EXPECT_EQ(j["k"].get<double>(), 1000.0);
  EXPECT_EQ(j["tau"].get<double>(), 0.1);
}

TEST(LoadSpec, OverridesParseJsonOrFallBackToStrings) {
  CliConfig cfg;
  cfg.overrides = {"rho=-10", "evaluation.kind=logistic", "evaluation.b=7", "expertise=[0.1,0.2]",
                   "train.anneal=true"};
  const auto j = json::parse(load_spec(cfg));
  EXPECT_EQ(j["rho"], -10);
  EXPECT_EQ(j["evaluation"]["kind"], "logistic");
  EXPECT_EQ(j["evaluation"]["b"], 7);
  EXPECT_EQ(j["expertise"].size(), 2u);
  EXPECT_EQ(j["train"]["anneal"], true);

  cfg.overrides = {"rho=1", "rho.x=2"};
  EXPECT_ANY_THROW(load_spec(cfg));
}

}  // namespace
}  // namespace teamgames::cli
