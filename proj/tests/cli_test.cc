// Copyright 2026 The xbin Authors
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

#include "xbin/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

namespace xbin {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const CliRun& r) { return Json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("xbin_cli_test_" + name);
}

TEST(GammaGrid, Parse) {
  const GammaGrid g = parse_gamma_grid("0.001:0.01:8");
  EXPECT_EQ(g.lo, 0.001);
  EXPECT_EQ(g.hi, 0.01);
  EXPECT_EQ(g.n, 8);
  EXPECT_THROW(parse_gamma_grid("0.001:0.01"), std::invalid_argument);
  EXPECT_THROW(parse_gamma_grid("a:0.01:8"), std::invalid_argument);
  EXPECT_THROW(parse_gamma_grid("0.001:0.01:8:9"), std::invalid_argument);
  EXPECT_THROW(parse_gamma_grid("0.001:0.01:8x"), std::invalid_argument);
}

TEST(Cli, Table1CsvReproducesMeanExcitations) {
  const CliRun r = run({"table1", "--max-w", "1", "--max-k", "2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "family,w,k,label,mean_excitation");
  std::map<std::string, std::set<std::string>> means;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto last = line.rfind(',');
    const auto first = line.find(',');
    const std::string key = line.substr(0, first) + "/k" + line.substr(first + 3, 1);
    means[key].insert(line.substr(last + 1));
  }
  EXPECT_EQ(rows, 18);
  EXPECT_EQ(means["one-bin/k1"], std::set<std::string>{"2"});
  EXPECT_EQ(means["qubit-ad/k1"], std::set<std::string>{"2"});
  EXPECT_EQ(means["ext-bin/k1"], std::set<std::string>{"2"});
  EXPECT_EQ(means["one-bin/k2"], std::set<std::string>{"4"});
  EXPECT_EQ(means["qubit-ad/k2"], std::set<std::string>{"3"});
  EXPECT_EQ(means["ext-bin/k2"], std::set<std::string>{"3"});
}

TEST(Cli, Table1JsonEnvelope) {
  const CliRun r = run({"table1", "--format", "json"});
  ASSERT_EQ(r.code, kExitPass);
  const Json j = json_of(r);
  EXPECT_EQ(j.at("command"), "table1");
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("results").size(), 18u);
}

TEST(Cli, BudgetReport) {
  const CliRun r = run({"budget", "--nc", "82"});
  ASSERT_EQ(r.code, kExitPass);
  const Json j = json_of(r);
  EXPECT_EQ(j.at("results").at("w_one_mode"), 11);
  EXPECT_EQ(j.at("results").at("w_extended"), 163);
  EXPECT_EQ(run({"budget", "--nc", "0"}).code, kExitUsage);
}

TEST(Cli, VerifySmallestCode) {
  const CliRun r = run({"verify", "--family", "ext-bin", "--w", "1", "--k", "1", "--gamma", "0.01"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json j = json_of(r);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_LT(j.at("results").at("kl").at("offdiag_max").get<double>(), 1e-13);
  EXPECT_TRUE(j.at("results").at("logical").at("pass").get<bool>());
  EXPECT_TRUE(j.at("results").at("syndrome").at("pass").get<bool>());
}

TEST(Cli, VerifyReportsUnassertedScalingForSeveralQubits) {
  const CliRun r = run({"verify", "--w", "2", "--k", "2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json kl = json_of(r).at("results").at("kl");
  EXPECT_FALSE(kl.at("slope_asserted").get<bool>());
  EXPECT_LT(kl.at("scaling").at("slope").get<double>(), 2.5);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--gamma", "0.06"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--gamma", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--w", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--family", "cat"}).code, kExitUsage);
  EXPECT_EQ(run({"scaling", "--gamma-grid", "0.001:0.01:3"}).code, kExitUsage);
  EXPECT_EQ(run({"scaling", "--gamma-grid", "0.001:0.1:8"}).code, kExitUsage);
  EXPECT_EQ(run({"table1", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"syndrome", "--family", "one-bin"}).code, kExitUsage);
  EXPECT_EQ(run({"syndrome", "--pattern", "1,0,0"}).code, kExitUsage);
  EXPECT_EQ(run({"encode", "--k", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"encode", "--alpha", "1"}).code, kExitUsage);
  const CliRun r = run({"verify", "--bogus"});
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(Cli, HelpExitsCleanly) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, IoFailureIsCheckFailure) {
  const CliRun r = run({"budget", "--out", "/nonexistent-dir/for/sure/out.json"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST(Cli, OutputFilesAreByteIdentical) {
  const auto a = temp_file("a.csv"), b = temp_file("b.csv");
  ASSERT_EQ(run({"scaling", "--w", "1", "--k", "1", "--format", "csv", "--out", a.string()}).code,
            kExitPass);
  setenv(kWorkersEnv, "4", 1);
  ASSERT_EQ(run({"scaling", "--w", "1", "--k", "1", "--format", "csv", "--out", b.string()}).code,
            kExitPass);
  unsetenv(kWorkersEnv);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string sa = slurp(a), sb = slurp(b);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(sa.substr(0, sa.find('\n')), "gamma,infidelity_naive,infidelity_transpose,tail_bound");
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  EXPECT_EQ(run({"cc", "--family", "ce-ext-bin", "--seed", "3"}).out,
            run({"cc", "--family", "ce-ext-bin", "--seed", "3"}).out);
  EXPECT_EQ(run({"encode", "--w", "2", "--seed", "8"}).out,
            run({"encode", "--w", "2", "--seed", "8"}).out);
}

TEST(Cli, ScalingSlopes) {
  const CliRun r = run({"scaling", "--w", "1", "--k", "2"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json res = json_of(r).at("results");
  EXPECT_NEAR(res.at("transpose").at("slope").get<double>(), 2.0, 0.2);
  EXPECT_GE(res.at("naive").at("slope").get<double>(), 0.95);
  const CliRun t = run({"scaling", "--family", "ce-ext-bin", "--w", "1", "--k", "1"});
  EXPECT_EQ(t.code, kExitPass) << t.err;
  EXPECT_FALSE(json_of(t).at("results").contains("naive"));
}

TEST(Cli, SyndromeForOnePattern) {
  const CliRun r = run({"syndrome", "--w", "1", "--k", "1", "--pattern", "1,0", "--label", "0"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json res = json_of(r).at("results");
  EXPECT_EQ(res.at("outcomes"), Json({1, 1, 0}));
  EXPECT_EQ(res.at("decoded"), Json({1, 0}));
  EXPECT_TRUE(res.at("match").get<bool>());
  const CliRun all = run({"syndrome", "--w", "3", "--k", "3"});
  EXPECT_EQ(all.code, kExitPass);
  EXPECT_EQ(json_of(all).at("results").at("failures").size(), 0u);
}

TEST(Cli, SyndromeBeyondWeightIsReportedNotFailed) {
  const CliRun r = run({"syndrome", "--w", "1", "--k", "1", "--pattern", "1,1", "--label", "0"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  const Json res = json_of(r).at("results");
  EXPECT_TRUE(res.at("decoded").is_null());
  EXPECT_FALSE(res.at("match").get<bool>());
}

TEST(Cli, CollectiveCoherentSweep) {
  const CliRun ce = run({"cc", "--family", "ce-ext-bin", "--w", "2", "--k", "2"});
  ASSERT_EQ(ce.code, kExitPass) << ce.err;
  EXPECT_EQ(json_of(ce).at("results").at("rows").size(), 400u);
  const CliRun eb = run({"cc", "--w", "1", "--k", "1", "--dt", "0.3,1.7"});
  ASSERT_EQ(eb.code, kExitPass);
  EXPECT_LT(json_of(eb).at("results").at("max_error").get<double>(), 1e-12);
}

TEST(Cli, EncodeWithExplicitAmplitudes) {
  const CliRun r = run({"encode", "--w", "1", "--alpha", "0.6", "--beta", "0,0.8"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json res = json_of(r).at("results");
  EXPECT_EQ(res.at("branches").size(), 4u);
  EXPECT_EQ(run({"encode", "--alpha", "0.6", "--beta", "0.6"}).code, kExitUsage);
  const CliRun s = run({"encode", "--sampled", "--seed", "4"});
  EXPECT_EQ(s.code, kExitPass);
  EXPECT_EQ(json_of(s).at("results").at("branches").size(), 1u);
}

TEST(Cli, CodewordEmission) {
  const CliRun r = run({"codeword", "--family", "ce-ext-bin", "--w", "1", "--k", "1", "--label", "1"});
  ASSERT_EQ(r.code, kExitPass);
  const Json c = json_of(r).at("results").at(0);
  EXPECT_EQ(c.at("family"), "ce-ext-bin");
  EXPECT_EQ(c.at("components").size(), 2u);
  EXPECT_EQ(c.at("components").at(0).at("occupation"), Json({0, 2, 2, 0}));
  const CliRun csv = run({"codeword", "--format", "csv", "--label", "0"});
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "family,w,k,label,occupation,re,im");
  EXPECT_EQ(run({"codeword", "--label", "01"}).code, kExitUsage);
}

TEST(Cli, ConfigFileWithFlagPrecedence) {
  const auto cfg = temp_file("config.json");
  {
    std::ofstream out(cfg);
    out << R"({"w": 2, "k": 1, "nc": 2.0, "family": "ext-bin"})";
  }
  const CliRun budget = run({"budget", "--config", cfg.string()});
  ASSERT_EQ(budget.code, kExitPass) << budget.err;
  EXPECT_EQ(json_of(budget).at("results").at("w_extended"), 3);
  const CliRun flagged = run({"budget", "--config", cfg.string(), "--nc", "82"});
  EXPECT_EQ(json_of(flagged).at("results").at("w_extended"), 163);
  const CliRun verify = run({"verify", "--config", cfg.string(), "--k", "2"});
  ASSERT_EQ(verify.code, kExitPass) << verify.err;
  EXPECT_EQ(json_of(verify).at("params").at("w"), 2);
  EXPECT_EQ(json_of(verify).at("params").at("k"), 2);
  {
    std::ofstream out(cfg);
    out << R"({"colour": "blue"})";
  }
  EXPECT_EQ(run({"budget", "--config", cfg.string()}).code, kExitUsage);
  {
    std::ofstream out(cfg);
    out << "{not json";
  }
  EXPECT_EQ(run({"budget", "--config", cfg.string()}).code, kExitUsage);
  std::filesystem::remove(cfg);
}

}  // namespace
}  // namespace xbin
