// Copyright 2026 The edgestep Authors
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


// End-to-end checks of the command-line tool: outputs, determinism, manifests
// and exit codes.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd =
      std::string(EDGESTEP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Fixture(const std::string& name) {
  return std::string(EDGESTEP_FIXTURE_DIR) + "/" + name;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edgestep_cli_" +
            std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Dir(const std::string& sub = "") const {
    return (dir_ / sub).string();
  }
  fs::path dir_;
};

TEST_F(CliTest, GenerateConstantOneGivesATree) {
  const auto r = Cli("generate --f const:1.0 --t 10 --seed 7 --out-dir " + Dir());
  ASSERT_EQ(r.code, 0);
  const std::string dump = Slurp(dir_ / "graph.dump");
  EXPECT_EQ(dump.substr(0, dump.find('\n')), "10 10 10");
  EXPECT_TRUE(fs::exists(dir_ / "graph_steps.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "graph_tau.csv"));
  const auto manifest =
      nlohmann::json::parse(Slurp(dir_ / "graph.manifest.json"));
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["command"], "generate");
  EXPECT_EQ(manifest["outputs"].size(), 3u);
}

TEST_F(CliTest, GenerateIsDeterministic) {
  ASSERT_EQ(Cli("generate --f rv:0.5 --t 2000 --seed 3 --track 1,5 --out-dir " +
                Dir("a"))
                .code,
            0);
  ASSERT_EQ(Cli("generate --f rv:0.5 --t 2000 --seed 3 --track 1,5 --out-dir " +
                Dir("b"))
                .code,
            0);
  for (const char* f : {"graph.dump", "graph_steps.csv", "graph_tau.csv",
                        "graph_tracked.csv"}) {
    EXPECT_EQ(Slurp(dir_ / "a" / f), Slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(CliTest, ReplayReproducesOutputs) {
  ASSERT_EQ(Cli("generate --f rv:0.4 --t 500 --seed 9 --out-dir " + Dir()).code,
            0);
  const std::string first = Slurp(dir_ / "graph.dump");
  fs::remove(dir_ / "graph.dump");
  ASSERT_EQ(Cli("replay " + Dir("graph.manifest.json")).code, 0);
  EXPECT_EQ(Slurp(dir_ / "graph.dump"), first);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Cli("generate --f const:1.0 --t 0 --out-dir " + Dir()).code, 2);
  EXPECT_EQ(Cli("generate --f bogus:1 --t 5 --out-dir " + Dir()).code, 2);
  EXPECT_EQ(Cli("generate --t 5 --out-dir " + Dir()).code, 2);
  EXPECT_EQ(Cli("experiment nosuch").code, 2);
  EXPECT_EQ(Cli("").code, 2);
}

TEST_F(CliTest, StatsOfInitialGraph) {
  const auto r = Cli("stats --graph " + Fixture("initial.dump"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["triangles"], 0);
  EXPECT_EQ(j["cherries"], 0);
  EXPECT_TRUE(j["global_clustering"].is_null());
}

TEST_F(CliTest, StatsOfK4) {
  const auto r = Cli("stats --graph " + Fixture("k4.dump"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["global_clustering"], 1.0);
  EXPECT_EQ(j["clique_size"], 4);
  EXPECT_EQ(j["diameter"], 1);
}

TEST_F(CliTest, StatsCliquePrefixZeroSkips) {
  const auto r =
      Cli("stats --f const:1.0 --t 50 --seed 2 --clique-prefix 0");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["clique_size"].is_null());
}

TEST_F(CliTest, StatsCsvFormat) {
  const auto r = Cli("stats --graph " + Fixture("k4.dump") + " --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("t,vertex_count,", 0), 0u);
  EXPECT_NE(r.out.find("\n6,4,6,6,4,12,1.0,4,4,false,1 2 3 4,1,true,3,\n"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, MalformedDumpNamesTheLine) {
  const std::string cmd = std::string(EDGESTEP_CLI_PATH) + " stats --graph " +
                          Fixture("malformed.dump") + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[512] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, pipe);
  const int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 1);
  EXPECT_NE(std::string(buf, n).find("line 3"), std::string::npos);
}

TEST_F(CliTest, CoupleEqualSpecs) {
  ASSERT_EQ(Cli("couple --f rv:0.5 --f rv:0.5 --t 300 --replicas 5 --out-dir " +
                Dir())
                .code,
            0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "couple.json"));
  EXPECT_EQ(j["all_equal_rows"], 5);
  EXPECT_EQ(j["pairs"][0]["tv"]["differ_fraction"], 0.0);
}

TEST_F(CliTest, CoupleOrderedSpecsPass) {
  ASSERT_EQ(Cli("couple --f rv:0.5 --f const:0.9 --t 500 --replicas 100 "
                "--assert-order --out-dir " +
                Dir())
                .code,
            0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "couple.json"));
  EXPECT_EQ(j["pairs"][0]["order"], "f<=h");
  EXPECT_EQ(j["pairs"][0]["monotone"]["pass"], true);
}

TEST_F(CliTest, CoupleAssertOrderViolation) {
  const std::string cmd = std::string(EDGESTEP_CLI_PATH) +
                          " couple --f const:0.9 --f rv:0.5 --t 100 "
                          "--assert-order --out-dir " +
                          Dir() + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[512] = {};
  const std::size_t n = fread(buf, 1, sizeof buf - 1, pipe);
  const int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 3);
  EXPECT_NE(std::string(buf, n).find("s = 2"), std::string::npos);
}

TEST_F(CliTest, ExperimentExponentWritesReports) {
  const auto r = Cli(
      "experiment exponent --stat cherries --gamma 0.4 --grid 512,1024,2048 "
      "--replicas 3 --seed 5 --out-dir " +
      Dir());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "exponent.json"));
  EXPECT_EQ(j["statistic"], "cherries");
  EXPECT_GT(j["slope"].get<double>(), 0.5);
  EXPECT_TRUE(fs::exists(dir_ / "exponent.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "exponent.manifest.json"));
}

TEST_F(CliTest, FailingToleranceExitsFourAndStillWrites) {
  const auto r = Cli(
      "experiment exponent --stat vertex_count --f const:1 --grid 256,512,1024 "
      "--replicas 2 --expect 0.2 --tol 0.01 --out-dir " +
      Dir());
  EXPECT_EQ(r.code, 4);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "exponent.json"));
  EXPECT_EQ(j["pass"], false);
  EXPECT_NEAR(j["slope"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, ExperimentTau) {
  const auto r = Cli("experiment tau --i 500 --delta 0.25 --replicas 20 "
                     "--out-dir " +
                     Dir());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "tau.json"));
  EXPECT_EQ(j["replicas"], 20);
  EXPECT_EQ(j["values"].size(), 20u);
}

TEST_F(CliTest, ExperimentFromConfigFile) {
  const auto r =
      Cli("--config " + Fixture("tau.toml") + " experiment tau --out-dir " +
          Dir());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "tau.json"));
  EXPECT_EQ(j["replicas"], 20);
  const auto manifest = nlohmann::json::parse(Slurp(dir_ / "tau.manifest.json"));
  EXPECT_EQ(manifest["command"], "experiment tau");
}

TEST_F(CliTest, ExperimentMonotoneOrderViolationIsContractError) {
  EXPECT_EQ(Cli("experiment monotone --f const:0.9 --h rv:0.5 --t 100 "
                "--replicas 2 --out-dir " +
                Dir())
                .code,
            3);
}

TEST_F(CliTest, ProfileExamples) {
  auto r = Cli("profile --f const:1.0 --grid 1,2,4");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "s,f,F,F_inv,phi,xi,psi,sandwich");
  std::vector<std::string> phi;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    phi.push_back(cells.at(4));
  }
  EXPECT_EQ(phi, (std::vector<std::string>{"1", "1.5", "2.1875"}));

  r = Cli("profile --f const:0.5 --grid 1,2,4");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n1,0.5,0.5,2,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\n2,0.5,1,4,"), std::string::npos);
  EXPECT_NE(r.out.find("\n4,0.5,2,8,"), std::string::npos);
}

TEST_F(CliTest, ProfileSandwichColumn) {
  const auto r = Cli("profile --f rv:0.5 --t 200");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    const double sandwich = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_GE(sandwich, 0.0);
    EXPECT_LE(sandwich, 1.0);
    ++rows;
  }
  EXPECT_EQ(rows, 200);
}

}  // namespace
