// Copyright 2026 The ceresa-harmonic Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ceresa_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = ceresa::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, TableCsvLayout) {
    auto r = run_cli({"table", "--n-min", "4", "--n-max", "8", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,k,frac,err,verdict");
    EXPECT_NE(r.out.find("\n4,1,0.262996,"), std::string::npos);
    EXPECT_NE(r.out.find("\n7,1,0.0389723,"), std::string::npos);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, DefaultTableHasNinetySixRows) {
    auto r = run_cli({"table", "--format", "csv", "--digits", "15"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 97);
    EXPECT_NE(r.out.find("\n99,1,0.72628"), std::string::npos);
}

TEST(Cli, OutputIndependentOfThreadCount) {
    auto a = run_cli({"table", "--n-max", "20", "--format", "json", "--threads", "1"});
    auto b = run_cli({"table", "--n-max", "20", "--format", "json", "--threads", "3"});
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonFields) {
    auto r = run_cli({"value", "--n", "5", "--format", "json", "--digits", "40"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"n", "k", "value", "frac", "int_distance", "err", "h_terms", "verdict"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["n"], 5);
    EXPECT_EQ(j["verdict"], "non-integral");
    EXPECT_EQ(j["value"].get<std::string>().rfind("55.5377411478373838235951683252976883924", 0), 0u);
}

TEST(Cli, DigitsFromEnvironmentFlagWins) {
    setenv("CERESA_DIGITS", "45", 1);
    auto env = run_cli({"value", "--n", "5", "--format", "json"});
    auto flag = run_cli({"value", "--n", "5", "--format", "json", "--digits", "12"});
    unsetenv("CERESA_DIGITS");
    auto frac_len = [](const std::string& s) { return nlohmann::json::parse(s)["frac"].get<std::string>().size(); };
    EXPECT_EQ(frac_len(env.out), 2u + 45);
    EXPECT_EQ(frac_len(flag.out), 2u + 12);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli({"check", "--n", "5", "--k", "1"}).code, 0);
    EXPECT_EQ(run_cli({"scan", "--n", "5", "--m-max", "100"}).code, 0);
    auto usage = run_cli({"value"});
    EXPECT_EQ(usage.code, 2);
    EXPECT_NE(usage.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"value", "--n", "5", "--digits", "9"}).code, 2);
    EXPECT_EQ(run_cli({"value", "--n", "5", "--k", "5"}).code, 2);  // k > g - 2
    EXPECT_EQ(run_cli({"table", "--format", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"table", "--n-min", "10", "--n-max", "10"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ScanGuardIsInconclusive) {
    auto r = run_cli({"scan", "--n", "5", "--m-max", "18446744073709551615", "--digits", "10"});
    EXPECT_EQ(r.code, 1);
}

TEST(Cli, TableRowFailureSetsExitCode) {
    auto r = run_cli({"table", "--n-min", "4", "--n-max", "6", "--k", "2", "--format", "csv"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("4,2,,,failed"), std::string::npos);
    EXPECT_NE(r.out.find("\n5,2,"), std::string::npos);
}

TEST(Cli, CheckAllK) {
    auto r = run_cli({"check", "--n", "6", "--all-k", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 8);  // g - 2 = 8
}

TEST(Cli, SelfTests) {
    auto d = run_cli({"dixon-test", "--samples", "5"});
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("PASS"), std::string::npos);
    auto o = run_cli({"oracle-test", "--n", "5"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("144 pairs"), std::string::npos);
}

TEST(Cli, KleinAndRelation) {
    auto k = run_cli({"klein", "--format", "csv"});
    EXPECT_EQ(k.code, 0);
    EXPECT_NE(k.out.find("\n7,13,"), std::string::npos);
    EXPECT_EQ(run_cli({"klein", "--k", "14"}).code, 2);
    auto rel = run_cli({"value", "--n", "7", "--relation"});
    EXPECT_EQ(rel.code, 0);
    EXPECT_NE(rel.out.find("relation search"), std::string::npos);
}
