// Copyright 2026 The Fragmenta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

using nlohmann::json;

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(FRAGMENTA_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(CliTest, FrozenCount) {
  const CliRun r = run("frozen-count --L 4 --method both");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["formula_value"], 56);
  EXPECT_EQ(j["brute_force"]["count_code_states"], 56);
  EXPECT_EQ(j["transfer_matrix"]["count_code_states"], 56);
  EXPECT_EQ(j["methods_agree"], true);
}

TEST(CliTest, Blocks) {
  const json j = json::parse(run("blocks --L 4").out);
  EXPECT_EQ(j["block_count"], 14);
  EXPECT_EQ(j["N_q"], 28);
  EXPECT_EQ(j["blocks"][0]["representative"], "4\n0101\n1111\n1010\n0000\n");
}

TEST(CliTest, Krylov) {
  const json j = json::parse(run("krylov --L 4").out);
  EXPECT_EQ(j["sector_count"], 24613);
  EXPECT_EQ(j["frozen_count"], 13924);
}

TEST(CliTest, GatesDemoCnot) {
  const CliRun r = run("gates-demo --L 4 --block 0 --gate cnot");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  int n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    const json j = json::parse(line);
    EXPECT_EQ(j["gate"], "cnot");
    EXPECT_DOUBLE_EQ(j["fidelity"].get<double>(), 1.0);
  }
  EXPECT_EQ(n, 4);
}

TEST(CliTest, SyndromeDemo) {
  const json j = json::parse(run("syndrome-demo --L 4 --block 1 --site 0 --pauli X").out);
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["defects"], 4);
}

TEST(CliTest, VerifyAlgebra) {
  const json j = json::parse(run("verify-algebra --L 4 --block 2").out);
  EXPECT_EQ(j["blocks"].size(), 1u);
  EXPECT_LE(j["max_residual"].get<double>(), 1e-12);
}

TEST(CliTest, Quadflip) {
  const json j = json::parse(run("quadflip --L 2 --m 3").out);
  EXPECT_EQ(j["valid_count"], 51);
  EXPECT_EQ(j["sector_count"], 37);
  EXPECT_EQ(j["multiplets"].size(), 12u);
  EXPECT_EQ(j["algebra_residuals"].size(), 12u);
}

TEST(CliTest, EvolveWritesCsvAndJson) {
  const std::string csv = ::testing::TempDir() + "fragmenta_evolve.csv";
  const std::string out = ::testing::TempDir() + "fragmenta_evolve.json";
  const CliRun r = run("evolve --L 4 --perturbation sym_zz_nnn --lambda 0.1 --tmax 2 --steps 4 --block 3 --csv " + csv +
                    " --out " + out);
  ASSERT_EQ(r.code, 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "t,reX,imX,population,fidelity");
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  EXPECT_EQ(rows, 5);
  const json j = json::parse(std::ifstream(out));
  EXPECT_NEAR(j["final"]["X_A"].get<double>(), 1.0, 1e-10);
  EXPECT_EQ(j["schema"], 1);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("frozen-count --method sideways").code, 2);
  EXPECT_EQ(run("frozen-count --L 5").code, 2);
  EXPECT_EQ(run("gates-demo --block 99").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(CliTest, DeterministicOutput) {
  const std::string args = "evolve --perturbation break_longitudinal_random --lambda 0.05 --tmax 1 --steps 2 --seed 3";
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_NE(run(args).out, run(args + "1").out);
}

}  // namespace
