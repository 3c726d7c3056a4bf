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


// fairins: design and certify fair insurance contracts for a portfolio file.
//
//   fairins analyze <file> [--format text|json] [--tolerance T] ...
//   fairins certify <file> [--premia p0,p1,...] [--payoffs <file>] ...
//
// Exit codes: 0 all certificates pass, 1 input error, 2 certificate failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairins/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Design and certify fair insurance contracts under a distortion valuation."};
  app.require_subcommand(1);

  fairins::RunConfig config;
  std::string format = "text";
  double tolerance = 0.0;
  std::vector<double> premia;
  std::string payoffs_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", config.input_path, "Portfolio JSON file")->required();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--tolerance", tolerance, "Slack tolerance (default 1e-9 or the file's)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--fuzzy-samples", config.fuzzy_samples, "Sampled fuzzy coalitions")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed, "Seed for sampled checks")->capture_default_str();
    cmd->add_option("--max-coalitions", config.limits.max_players,
                    "Largest N+1 for exhaustive coalition checks")
        ->capture_default_str();
    cmd->add_option("--max-events", config.limits.max_outcomes,
                    "Largest M for exhaustive event checks")
        ->capture_default_str();
    cmd->add_option("--max-partitions", config.limits.partition_budget,
                    "Partition budget for the maximality check")
        ->capture_default_str();
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Run the full design-and-certify pipeline");
  add_common(analyze);
  CLI::App* certify = app.add_subcommand("certify", "Certify supplied premia and/or payoffs");
  add_common(certify);
  certify->add_option("--premia", premia, "Premia for players 0..N (comma separated)")
      ->delimiter(',');
  certify->add_option("--payoffs", payoffs_path, "Payoff matrix JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fairins::exit_code::input_error;
  }

  config.format = format == "json" ? fairins::OutputFormat::json : fairins::OutputFormat::text;
  if (tolerance > 0.0) config.tolerance = tolerance;

  fairins::Report report;
  if (*analyze) {
    report = fairins::cmd_analyze(config);
  } else {
    std::optional<std::vector<double>> premia_override;
    if (!premia.empty()) premia_override = premia;
    std::optional<std::string> payoffs_override;
    if (!payoffs_path.empty()) payoffs_override = payoffs_path;
    report = fairins::cmd_certify(config, premia_override, payoffs_override);
  }
  std::cout << report.render(config.format);
  return report.exit_code;
}
