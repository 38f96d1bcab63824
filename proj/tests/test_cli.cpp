// Copyright 2026 The tailent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tailent/cli.hpp"

namespace tailent {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tailent-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(std::vector<std::string> args, const std::string& sub = "out") {
    args.insert(args.begin(), {"--out", (dir_ / sub).string()});
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }
  std::string read(const std::string& rel) {
    std::ifstream f(dir_ / rel);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }
  static std::string scenario(const std::string& name) { return std::string(TAILENT_SCENARIO_DIR) + "/" + name; }

  fs::path dir_;
};

TEST_F(CliTest, ValidateOkAndInvalid) {
  EXPECT_EQ(run({"validate", "--scenario", scenario("sys_a.json")}).code, kExitOk);
  fs::create_directories(dir_);
  std::ofstream(dir_ / "bad.json") << R"({"driving": {"d": {"prob": ["2/3", "1/3"], "theta": [1, 0]}},
    "systems": {"s": {"driving": "d", "fibers": [["a"], ["b"]], "maps": [{"a": "b"}, {"b": "a"}]}}})";
  CliRun bad = run({"validate", "--scenario", (dir_ / "bad.json").string()});
  EXPECT_EQ(bad.code, kExitCheckFailed);
  EXPECT_NE(bad.out.find("theta-invariance"), std::string::npos);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(run({"count", "--scenario", scenario("missing.json"), "--r", "a", "--q", "b"}).code, kExitInputError);
  EXPECT_EQ(run({"count", "--scenario", scenario("sys_a.json"), "--r", "nope", "--q", "trivial"}).code,
            kExitInputError);
  EXPECT_EQ(run({"count", "--scenario", scenario("sys_a.json"), "--r", "@singletons", "--q", "trivial"}).code,
            kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"--budget", "bogus=1", "verify", "--suite", "cover", "--trials", "1"}).code, kExitInputError);
}

TEST_F(CliTest, TailWritesCsvAndManifest) {
  CliRun r = run({"tail", "--scenario", scenario("sys_a.json"), "--system", "sys-a", "--r", "@singletons", "--q",
                  "@trivial", "--nmax", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::string csv = read("out/tail.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "scenario,r,q,n,a_n,ratio,running_inf");
  EXPECT_NE(csv.find(",8,0.69314718055994529,0.086643397569993161,0.086643397569993161"), std::string::npos);
  auto m = nlohmann::json::parse(read("out/manifest.json"));
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_EQ(m["command"], "tail");
  EXPECT_TRUE(m["columns"].contains("a_n"));
}

TEST_F(CliTest, BudgetExitKeepsManifest) {
  CliRun r = run({"--budget", "max_cover_elements=1", "tail", "--scenario", scenario("sys_a.json"), "--r",
                  "singletons", "--q", "trivial"});
  EXPECT_EQ(r.code, kExitBudget);
  auto m = nlohmann::json::parse(read("out/manifest.json"));
  EXPECT_EQ(m["exit_code"], kExitBudget);
}

TEST_F(CliTest, TruncatedTailExitsWithBudgetCode) {
  CliRun r = run({"--budget", "max_cover_elements=2", "tail", "--scenario", scenario("sys_b.json"), "--system",
                  "sys-b", "--r", "@singletons", "--q", "@trivial", "--nmax", "3"});
  // Singletons have 4 traces on the one fiber, which already exceeds 2.
  EXPECT_EQ(r.code, kExitBudget);
}

TEST_F(CliTest, OtherCommands) {
  EXPECT_EQ(run({"count", "--scenario", scenario("sys_a.json"), "--r", "singletons", "--q", "overlap", "--n", "3"}).code,
            kExitOk);
  EXPECT_EQ(run({"tail-total", "--scenario", scenario("sys_a.json"), "--qfamily", "trivial,overlap", "--rfamily",
                 "singletons", "--nmax", "4"}).code,
            kExitOk);
  EXPECT_EQ(run({"sft-tail", "--scenario", scenario("shifts.json"), "--sft", "golden", "--rspec", "0:1", "--qspec",
                 ":1", "--nmax", "5"}).code,
            kExitOk);
  EXPECT_EQ(run({"entropy", "--scenario", scenario("sys_a.json"), "--mu", "on-a", "--r", "singletons", "--sigma",
                 "trivial", "--nmax", "3"}).code,
            kExitOk);
  EXPECT_EQ(run({"invariant", "--scenario", scenario("sys_a.json"), "--system", "sys-a", "--vertices"}).code, kExitOk);
  EXPECT_NE(read("out/vertices.csv").find("sys-a,0,0,a,1/2"), std::string::npos);
  EXPECT_EQ(run({"invariant", "--scenario", scenario("sys_a.json"), "--lift", "pi-first", "on-a"}).code, kExitOk);
  EXPECT_EQ(run({"construct", "--scenario", scenario("sys_b.json"), "--prop4", "--qchain", "singletons", "--pchain",
                 "singletons", "--n", "2", "--delta", "1"}).code,
            kExitOk);
  EXPECT_EQ(run({"construct", "--scenario", scenario("sys_a.json"), "--prop3", "--p", "singletons", "--q",
                 "singletons", "--n", "2", "--delta", "1,1"}).code,
            kExitOk);
}

TEST_F(CliTest, VerifyIsDeterministic) {
  std::vector<std::string> args = {"verify", "--suite", "entropy", "--seed", "4", "--trials", "10"};
  ASSERT_EQ(run(args, "one").code, kExitOk);
  ASSERT_EQ(run(args, "two").code, kExitOk);
  EXPECT_EQ(read("one/verify-entropy.json"), read("two/verify-entropy.json"));
  EXPECT_FALSE(read("one/verify-entropy.json").empty());
}

}  // namespace
}  // namespace tailent
