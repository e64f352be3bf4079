//
// Copyright 2026 The pantest Authors
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
//

#include "pantest/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace pantest::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pantest_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, NoiselessExactUniform) {
  const Result r = invoke({"test", "--tester", "simple", "--k", "10", "--m",
                           "1000", "--instance", "exact-uniform", "--noiseless",
                           "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "Uniform");
  EXPECT_EQ(j.at("samples_consumed"), 1000);
  EXPECT_EQ(j.at("seed"), 1);
}

TEST_F(CliTest, BadAlphaIsConfigError) {
  EXPECT_EQ(invoke({"test", "--k", "10", "--m", "100", "--alpha", "1.5",
                    "--seed", "1"})
                .code,
            kExitConfig);
  EXPECT_EQ(invoke({"test", "--m", "100"}).code, kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);
}

TEST_F(CliTest, SeededRunsAreDeterministic) {
  const std::vector<std::string> args{"test", "--tester", "pan", "--k", "64",
                                      "--m", "500", "--instance",
                                      "paninski-far", "--seed", "99"};
  const Result a = invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, invoke(args).out);
  const Result unseeded =
      invoke({"test", "--k", "8", "--m", "100", "--instance", "uniform"});
  EXPECT_EQ(unseeded.code, kExitOk);
  EXPECT_TRUE(unseeded.err.starts_with("seed ")) << unseeded.err;
}

TEST_F(CliTest, ShortFileIsInputError) {
  const fs::path file = write("stream.txt", "0 1 2 3\n");
  const Result r = invoke({"test", "--k", "4", "--m", "100", "--instance",
                           "file", "--file", file.string(), "--seed", "1"});
  EXPECT_EQ(r.code, kExitInput) << r.out;
  const fs::path bad = write("bad.txt", "0 1 7 3\n");
  EXPECT_EQ(invoke({"test", "--k", "4", "--m", "4", "--noiseless", "--instance",
                    "file", "--file", bad.string(), "--seed", "1"})
                .code,
            kExitInput);
  EXPECT_EQ(invoke({"test", "--k", "4", "--m", "4", "--instance", "file",
                    "--file", (dir_ / "missing").string(), "--seed", "1"})
                .code,
            kExitInput);
}

TEST_F(CliTest, ConfigFileAndPrecedence) {
  const fs::path cfg = write("test.cfg",
                             "# comment\nk = 10\nm=300\ninstance=exact-uniform\n"
                             "noiseless=true\nseed=3\n");
  const Result from_file = invoke({"test", "--config", cfg.string()});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_EQ(nlohmann::json::parse(from_file.out).at("samples_consumed"), 300);
  const Result overridden =
      invoke({"test", "--config", cfg.string(), "--m", "200"});
  ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
  EXPECT_EQ(nlohmann::json::parse(overridden.out).at("samples_consumed"), 200);
  const Result before = invoke({"test", "--m", "200", "--config", cfg.string()});
  EXPECT_EQ(nlohmann::json::parse(before.out).at("samples_consumed"), 200);

  const fs::path unknown = write("bad.cfg", "k=10\nbogus_key=1\n");
  EXPECT_EQ(invoke({"test", "--config", unknown.string()}).code, kExitConfig);
  EXPECT_EQ(invoke({"test", "--config", (dir_ / "none.cfg").string()}).code,
            kExitConfig);
}

TEST_F(CliTest, PowerIsQuickAndPersists) {
  const fs::path out = dir_ / "power.jsonl";
  const auto start = std::chrono::steady_clock::now();
  const Result r = invoke({"power", "--k", "20", "--m", "500", "--trials",
                           "100", "--seed", "5", "--output", out.string()});
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(seconds, 1.0);
  EXPECT_NE(r.out.find("p_u|u"), std::string::npos);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j.at("type"), "power");
  for (const char* key : {"config", "result", "timestamp"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j.at("result").at("trials"), 100);
  EXPECT_EQ(invoke({"power", "--k", "20", "--m", "500", "--trials", "99",
                    "--seed", "5"})
                .code,
            kExitConfig);
}

TEST_F(CliTest, ComplexityPrintsTrace) {
  const Result r = invoke({"complexity", "--tester", "chi2", "--k", "16",
                           "--alpha", "0.9", "--trials", "200", "--seed", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("sep_lower"), std::string::npos);
  EXPECT_NE(r.out.find("m_star "), std::string::npos);
  const Result capped =
      invoke({"complexity", "--k", "20", "--trials", "100", "--m-cap", "32",
              "--seed", "2"});
  ASSERT_EQ(capped.code, kExitOk) << capped.err;
  EXPECT_NE(capped.out.find("m_star NotFound"), std::string::npos);
}

TEST_F(CliTest, PartitionExperiment) {
  const Result r = invoke({"partition-exp", "--trials", "2000", "--seed", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("k"), 64);
  EXPECT_EQ(j.at("n"), 8);
  EXPECT_GT(j.at("success_fraction").get<double>(), 0.0);
}

TEST_F(CliTest, AuditExitCodes) {
  auto audit = [](const char* claimed) {
    return invoke({"audit", "--mechanism", "randomized-response", "--epsilon",
                   "1", "--claimed", claimed, "--seed", "8"});
  };
  const Result pass = audit("1");
  ASSERT_EQ(pass.code, kExitOk) << pass.err;
  EXPECT_EQ(nlohmann::json::parse(pass.out).at("verdict"), "Pass");
  const Result fail = audit("0.5");
  EXPECT_EQ(fail.code, kExitAuditFail);
  EXPECT_EQ(nlohmann::json::parse(fail.out).at("verdict"), "Fail");
  EXPECT_EQ(audit("2").code, kExitOk);
  EXPECT_EQ(invoke({"audit", "--mechanism", "histogram-state", "--claimed", "1",
                    "--noiseless", "--seed", "1"})
                .code,
            kExitConfig);
}

TEST_F(CliTest, HistogramAuditSingleBin) {
  const Result r = invoke({"audit", "--mechanism", "histogram-state",
                           "--claimed", "1", "--trials", "10000", "--t", "4",
                           "--bins", "0", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("analytic_bound"), 1.0);
}

TEST_F(CliTest, BridgeDemo) {
  const fs::path trace = dir_ / "trace.jsonl";
  const Result r = invoke({"bridge-demo", "--protocol", "parity", "--trials",
                           "1000", "--seed", "1", "--trace", trace.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("output_tv 0  roundtrip_tv 0"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("prefix_monotone yes"), std::string::npos);
  std::ifstream in(trace);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 4);
  EXPECT_EQ(invoke({"bridge-demo", "--protocol", "nope", "--seed", "1"}).code,
            kExitConfig);
  EXPECT_EQ(invoke({"bridge-demo", "--trials", "999", "--seed", "1"}).code,
            kExitConfig);
}

}  // namespace
}  // namespace pantest::cli
