// Copyright 2026 The fairins Authors
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


#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fairins/report.hpp"

namespace fairins {
namespace {

namespace fs = std::filesystem;

const std::string kData = FAIRINS_DATA_DIR;
const std::string kCli = FAIRINS_CLI_PATH;

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string command = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json run_json(const std::string& args, int expected_exit) {
  const CliRun r = run_cli(args + " --format json");
  EXPECT_EQ(r.exit_code, expected_exit) << r.out;
  return nlohmann::json::parse(r.out);
}

// Writes `text` to a fresh file under the test temp directory.
std::string temp_file(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "fairins_cli_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string kFixture = kData + "/fixture_a.json";

template <class Json>
const Json* find_certificate(const Json& record, const std::string& name) {
  for (const auto& c : record["certificates"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

// --- analyze ---------------------------------------------------------------------------

TEST(Analyze, ReferencePortfolio) {
  RunConfig config;
  config.input_path = kFixture;
  const Report report = cmd_analyze(config);
  ASSERT_EQ(report.exit_code, 0) << report.record.dump(2);
  const auto& r = report.record;
  EXPECT_NEAR(r["k"].get<double>(), 2.7559, 1e-4);
  EXPECT_NEAR(r["K"].get<double>(), 3.7559, 1e-4);
  EXPECT_DOUBLE_EQ(r["default_probability"].get<double>(), 0.2);
  const std::vector<double> pi = r["premia"];
  EXPECT_NEAR(pi[0], 1.0, 1e-12);
  EXPECT_NEAR(pi[1], 1.41421, 1e-5);
  EXPECT_NEAR(pi[2], 1.34164, 1e-5);
  const std::vector<double> alpha = r["alpha"];
  EXPECT_NEAR(alpha[0], 0.44559, 1e-3);
  EXPECT_NEAR(alpha[1], 0.22176, 1e-3);
  EXPECT_NEAR(alpha[2], 0.33264, 1e-3);
  EXPECT_EQ(r["payoffs"].size(), 3u);
  EXPECT_EQ(r["payoffs"][0].size(), 3u);
  EXPECT_EQ(r["benefits"].size(), 3u);
  EXPECT_TRUE(r["all_passed"].get<bool>());
  for (const char* name : {"core", "admissibility", "payoff_fairness", "maximality", "shareholder",
                           "scenario_membership", "two_alternating", "fuzzy_core", "state_fairness",
                           "fuzzy_fairness", "state_maximality"}) {
    const auto* c = find_certificate(r, name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_TRUE((*c)["passed"].get<bool>()) << name;
  }
  EXPECT_EQ(r["config"]["seed"], 42);
  EXPECT_EQ(r["config"]["fuzzy_samples"], 10000);
  EXPECT_EQ(r["config"]["tolerance"], 1e-9);
}

TEST(Analyze, BadProbabilitiesAreAnInputError) {
  RunConfig config;
  config.input_path = kData + "/bad_probabilities.json";
  const Report report = cmd_analyze(config);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "ValidationError");
  EXPECT_EQ(report.record["error"]["field"], "probabilities");
}

TEST(Analyze, DegeneratePortfolioWarns) {
  RunConfig config;
  config.input_path = kData + "/degenerate.json";
  const Report report = cmd_analyze(config);
  EXPECT_EQ(report.exit_code, 0);
  ASSERT_EQ(report.record["warnings"].size(), 1u);
  EXPECT_EQ(report.record["warnings"][0], "degenerate: no default risk");
  EXPECT_EQ(report.record["alpha"].get<std::vector<double>>(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(find_certificate(report.record, "state_fairness"), nullptr);
}

struct FieldCase {
  const char* name;
  const char* body;
  const char* field;
};

void PrintTo(const FieldCase& c, std::ostream* os) { *os << c.name; }

class AnalyzeValidation : public ::testing::TestWithParam<FieldCase> {};

TEST_P(AnalyzeValidation, NamesTheOffendingField) {
  const auto& param = GetParam();
  RunConfig config;
  config.input_path = temp_file(std::string(param.name) + ".json", param.body);
  const Report report = cmd_analyze(config);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "ValidationError") << report.record.dump();
  EXPECT_EQ(report.record["error"]["field"], param.field) << report.record.dump();
}

constexpr const char* kGood = R"("distortion": {"kind": "power", "gamma": 0.5})";

INSTANTIATE_TEST_SUITE_P(
    Fields, AnalyzeValidation,
    ::testing::Values(
        FieldCase{"no_probabilities", R"({"k0": 1, "agents": []})", "probabilities"},
        FieldCase{"negative_probability",
                  R"({"probabilities": [1.5, -0.5], "agents": [], "distortion": {"kind": "identity"}})",
                  "probabilities"},
        FieldCase{"string_k0",
                  R"({"probabilities": [1], "k0": "one", "agents": [], "distortion": {"kind": "identity"}})",
                  "k0"},
        FieldCase{"negative_k0",
                  R"({"probabilities": [1], "k0": -1, "agents": [], "distortion": {"kind": "identity"}})",
                  "k0"},
        FieldCase{"no_agents", R"({"probabilities": [1], "k0": 1, "distortion": {"kind": "identity"}})",
                  "agents"},
        FieldCase{"short_losses",
                  R"({"probabilities": [0.5, 0.5], "k0": 1, "agents": [{"losses": [1]}], "distortion": {"kind": "identity"}})",
                  "agents[0].losses"},
        FieldCase{"negative_losses",
                  R"({"probabilities": [0.5, 0.5], "k0": 1, "agents": [{"losses": [1, 2]}, {"losses": [-1, 2]}], "distortion": {"kind": "identity"}})",
                  "agents[1].losses"},
        FieldCase{"no_gamma",
                  R"({"probabilities": [0.5, 0.5], "k0": 1, "agents": [{"losses": [1, 2]}], "distortion": {"kind": "power"}})",
                  "distortion.gamma"},
        FieldCase{"bad_tolerance",
                  R"({"probabilities": [0.5, 0.5], "k0": 1, "agents": [{"losses": [1, 2]}], "distortion": {"kind": "identity"}, "tolerance": 0})",
                  "tolerance"}),
    [](const ::testing::TestParamInfo<FieldCase>& info) { return std::string(info.param.name); });

TEST(Analyze, MalformedJsonIsAParseError) {
  RunConfig config;
  config.input_path = temp_file("malformed.json", std::string("{\"probabilities\": [0.5, ") + kGood);
  const Report report = cmd_analyze(config);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "InputParseError");

  config.input_path = kData + "/does_not_exist.json";
  EXPECT_EQ(cmd_analyze(config).record["error"]["kind"], "InputParseError");
}

TEST(Analyze, ToleranceFromFileUnlessOverridden) {
  RunConfig config;
  config.input_path = temp_file(
      "tolerance.json",
      R"({"probabilities": [0.5, 0.3, 0.2], "k0": 1, "agents": [{"losses": [0, 2, 2]}, {"losses": [0, 0, 3]}], "distortion": {"kind": "power", "gamma": 0.5}, "tolerance": 1e-7})");
  EXPECT_EQ(cmd_analyze(config).record["config"]["tolerance"], 1e-7);
  config.tolerance = 1e-6;
  EXPECT_EQ(cmd_analyze(config).record["config"]["tolerance"], 1e-6);
}

TEST(Analyze, ExhaustionCapIsReported) {
  RunConfig config;
  config.input_path = kFixture;
  config.limits.max_outcomes = 2;
  const Report report = cmd_analyze(config);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "ExhaustionLimitExceeded");
}

// --- certify ------------------------------------------------------------------------------

TEST(Certify, FairPremiaAndStandardPayoffs) {
  RunConfig config;
  config.input_path = kFixture;
  const std::vector<double> fair{1.0, 2.0 * std::sqrt(0.5), 3.0 * std::sqrt(0.2)};
  const Report report = cmd_certify(config, fair, kData + "/fixture_a_standard_payoffs.json");
  EXPECT_EQ(report.exit_code, 0) << report.record.dump(2);
  EXPECT_EQ(report.record["certificates"].size(), 5u);
  EXPECT_EQ(report.record["premia_source"], "override");
}

TEST(Certify, PremiumBumpFailsCore) {
  RunConfig config;
  config.input_path = kFixture;
  const Report report = cmd_certify(config, std::vector<double>{1.0, 1.6, 1.15586}, std::nullopt);
  EXPECT_EQ(report.exit_code, 2);
  const auto* core = find_certificate(report.record, "core");
  ASSERT_NE(core, nullptr);
  EXPECT_FALSE((*core)["passed"].get<bool>());
  EXPECT_EQ((*core)["worst_label"], "{1}");
  EXPECT_NEAR((*core)["worst_slack"].get<double>(), 2.0 * std::sqrt(0.5) - 1.6, 1e-12);
}

TEST(Certify, DefaultDividendFailsAdmissibility) {
  RunConfig config;
  config.input_path = kFixture;
  const Report report =
      cmd_certify(config, std::nullopt, kData + "/fixture_a_default_dividend.json");
  EXPECT_EQ(report.exit_code, 2);
  EXPECT_FALSE((*find_certificate(report.record, "admissibility"))["passed"].get<bool>());
}

TEST(Certify, DimensionMismatch) {
  RunConfig config;
  config.input_path = kFixture;
  Report report = cmd_certify(config, std::vector<double>{1.0, 2.0}, std::nullopt);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "DimensionMismatch");

  const auto two_rows = temp_file("two_rows.json", R"({"payoffs": [[1, 1, 1], [2, 2, 2]]})");
  report = cmd_certify(config, std::nullopt, two_rows);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["kind"], "DimensionMismatch");

  const auto short_row = temp_file("short_row.json", R"({"payoffs": [[1, 1, 1], [2, 2], [0, 0, 0]]})");
  EXPECT_EQ(cmd_certify(config, std::nullopt, short_row).record["error"]["kind"], "DimensionMismatch");
}

TEST(Certify, NegativePremiaAreAnInputError) {
  RunConfig config;
  config.input_path = kFixture;
  const Report report = cmd_certify(config, std::vector<double>{1.0, -1.0, 3.0}, std::nullopt);
  EXPECT_EQ(report.exit_code, 1);
  EXPECT_EQ(report.record["error"]["field"], "premia");
}

// --- binary -------------------------------------------------------------------------------------

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("analyze " + kFixture).exit_code, 0);
  EXPECT_EQ(run_cli("analyze " + kData + "/bad_probabilities.json").exit_code, 1);
  EXPECT_EQ(run_cli("analyze " + kData + "/degenerate.json").exit_code, 0);
  EXPECT_EQ(run_cli("certify " + kFixture + " --premia 1,1.6,1.15586").exit_code, 2);
  EXPECT_EQ(run_cli("certify " + kFixture + " --payoffs " + kData + "/fixture_a_default_dividend.json")
                .exit_code,
            2);
  EXPECT_EQ(run_cli("certify " + kFixture + " --payoffs " + kData + "/fixture_a_standard_payoffs.json")
                .exit_code,
            0);
  EXPECT_EQ(run_cli("certify " + kFixture + " --premia 1,2").exit_code, 1);
  EXPECT_EQ(run_cli("").exit_code, 1);
  EXPECT_EQ(run_cli("analyze").exit_code, 1);
  EXPECT_EQ(run_cli("analyze " + kFixture + " --format yaml").exit_code, 1);
  EXPECT_EQ(run_cli("analyze " + kFixture + " --tolerance -1").exit_code, 1);
  EXPECT_EQ(run_cli("analyze " + kFixture + " --bogus").exit_code, 1);
  EXPECT_EQ(run_cli("--help").exit_code, 0);
}

TEST(Binary, JsonReportIsDeterministic) {
  const CliRun first = run_cli("analyze " + kFixture + " --format json");
  const CliRun second = run_cli("analyze " + kFixture + " --format json");
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.out, second.out);
  const auto record = nlohmann::json::parse(first.out);
  EXPECT_EQ(record["config"]["command"], "analyze");
}

TEST(Binary, FlagsReachTheConfigEcho) {
  const auto record = run_json("analyze " + kFixture +
                                   " --seed 7 --fuzzy-samples 100 --tolerance 1e-8 --max-coalitions 10"
                                   " --max-events 12 --max-partitions 52",
                               0);
  EXPECT_EQ(record["config"]["seed"], 7);
  EXPECT_EQ(record["config"]["fuzzy_samples"], 100);
  EXPECT_EQ(record["config"]["tolerance"], 1e-8);
  EXPECT_EQ(record["config"]["max_coalitions"], 10);
  EXPECT_EQ(record["config"]["max_events"], 12);
  EXPECT_EQ(record["config"]["max_partitions"], 52);
  EXPECT_EQ((*find_certificate(record, "fuzzy_fairness"))["checked_count"], 108);
  EXPECT_EQ((*find_certificate(record, "fuzzy_fairness"))["seed"], 7);
}

TEST(Binary, ErrorRecordInJson) {
  const auto record = run_json("analyze " + kData + "/bad_probabilities.json", 1);
  EXPECT_EQ(record["error"]["kind"], "ValidationError");
  EXPECT_EQ(record["error"]["field"], "probabilities");
}

TEST(Binary, TextReportRoundsToFiveDecimals) {
  const CliRun r = run_cli("analyze " + kFixture);
  EXPECT_NE(r.out.find("pi = (1.00000, 1.41421, 1.34164)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("K = 3.75585"), std::string::npos);
  EXPECT_NE(r.out.find("all certificates pass"), std::string::npos);

  const CliRun bad = run_cli("certify " + kFixture + " --premia 1,1.6,1.15586");
  EXPECT_NE(bad.out.find("FAIL core"), std::string::npos) << bad.out;
  EXPECT_NE(bad.out.find("at {1}"), std::string::npos);
}

TEST(Binary, PremiaAcceptSpaceSeparatedValues) {
  EXPECT_EQ(run_cli("certify " + kFixture + " --premia 1 1.6 1.15586").exit_code, 2);
}

}  // namespace
}  // namespace fairins
