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

/**
 * \file fairins/report.hpp
 *
 * \brief The analyze / certify pipelines behind the command line tool.
 *
 * Both commands return a Report: one self-describing JSON record plus the
 * exit code (0 all certificates pass, 1 input error, 2 a certificate
 * failed). The text rendering is derived from the record and rounds to five
 * decimals; the JSON rendering keeps full precision.
 */

#ifndef FAIRINS_REPORT_HPP
#define FAIRINS_REPORT_HPP

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairins/certificate.hpp"
#include "fairins/contracts.hpp"
#include "fairins/errors.hpp"
#include "fairins/game.hpp"
#include "fairins/portfolio.hpp"
#include "fairins/state_payoffs.hpp"
#include "fairins/valuation.hpp"

namespace fairins {

enum class OutputFormat { text, json };

struct RunConfig {
  std::string input_path;
  OutputFormat format = OutputFormat::text;
  /// Unset: the portfolio file's "tolerance", else kDefaultTolerance.
  std::optional<double> tolerance;
  std::size_t fuzzy_samples = 10000;
  std::uint64_t seed = 42;
  EnumerationLimits limits;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int certificate_failed = 2;
}  // namespace exit_code

struct Report {
  nlohmann::ordered_json record;
  int exit_code = exit_code::ok;

  std::string render(OutputFormat format) const;
};

namespace detail {

inline nlohmann::ordered_json numbers(std::span<const double> v) {
  return nlohmann::ordered_json(std::vector<double>(v.begin(), v.end()));
}

inline nlohmann::ordered_json rows_json(std::span<const RandomVariable> rows) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& r : rows) out.push_back(numbers(r.values()));
  return out;
}

inline nlohmann::ordered_json config_json(const RunConfig& config, const std::string& command,
                                          double tol) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["input"] = config.input_path;
  j["tolerance"] = tol;
  j["fuzzy_samples"] = config.fuzzy_samples;
  j["seed"] = config.seed;
  j["max_coalitions"] = config.limits.max_players;
  j["max_events"] = config.limits.max_outcomes;
  j["max_pair_checks"] = config.limits.max_pair_checks;
  j["max_partitions"] = config.limits.partition_budget;
  return j;
}

inline double resolve_tolerance(const RunConfig& config, const Portfolio& p) {
  const double tol = config.tolerance.value_or(p.tolerance.value_or(kDefaultTolerance));
  if (!(tol > 0.0)) throw ValidationError("tolerance", "must be positive");
  return tol;
}

inline Report finish_report(nlohmann::ordered_json record, const std::vector<Certificate>& certs) {
  bool all_passed = true;
  auto list = nlohmann::ordered_json::array();
  for (const auto& c : certs) {
    all_passed = all_passed && c.passed;
    list.push_back(c);
  }
  record["certificates"] = std::move(list);
  record["all_passed"] = all_passed;
  return Report{std::move(record), all_passed ? exit_code::ok : exit_code::certificate_failed};
}

inline Report error_report(const std::string& command, const std::string& kind,
                           const std::string* field, const std::string& message) {
  nlohmann::ordered_json record;
  record["command"] = command;
  nlohmann::ordered_json error;
  error["kind"] = kind;
  if (field) error["field"] = *field;
  error["message"] = message;
  record["error"] = std::move(error);
  return Report{std::move(record), exit_code::input_error};
}

// Every failure becomes exit code 1 with a structured error record.
template <typename F>
Report guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    return error_report(command, e.kind(), &e.field(), e.what());
  } catch (const Error& e) {
    return error_report(command, e.kind(), nullptr, e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_report(command, "InputParseError", nullptr, e.what());
  } catch (const std::exception& e) {
    return error_report(command, "InternalError", nullptr, e.what());
  }
}

}  // namespace detail

/// Full design-and-certify pipeline on a portfolio file.
inline Report cmd_analyze(const RunConfig& config) {
  return detail::guarded("analyze", [&] {
    const Portfolio p = load_portfolio(config.input_path);
    const double tol = detail::resolve_tolerance(config, p);
    const auto& space = p.space;
    const auto& x = p.liabilities;
    const auto& w = p.distortion;

    const ContractDesign design = design_contracts(space, x, w, tol);
    const auto& agg = design.aggregate;

    nlohmann::ordered_json record;
    record["config"] = detail::config_json(config, "analyze", tol);
    record["portfolio"] = portfolio_to_json(p);
    record["warnings"] = design.warnings;
    record["k"] = agg.premium;
    record["K"] = agg.capital;
    record["default_probability"] = agg.default_probability;
    record["default_event"] = agg.default_event.outcomes();
    record["pricing_measure"] = detail::numbers(design.pricing_measure.masses());
    record["premia"] = detail::numbers(design.premia.values());
    record["alpha"] = detail::numbers(design.alpha.values());
    record["payoffs"] = detail::rows_json(design.payoffs.rows());
    record["benefits"] = detail::rows_json(benefits(x, design.payoffs));

    std::vector<Certificate> certs = certify_contracts(space, x, design.premia, design.payoffs,
                                                       design.pricing_measure, w, config.limits, tol);
    certs.push_back(scenario_membership(space, w, design.pricing_measure, config.limits, tol));

    if (!agg.degenerate) {
      // State game on the total exposure Z = S^X + k0 with K = P(Z).
      const RandomVariable z = agg.total_loss + x.k0();
      const auto family = alpha_star(space, z, agg.capital, design.pricing_measure, w, tol);
      const auto pi = pi_star(z, design.pricing_measure);
      record["state_benefit_measure"] = detail::numbers(family.benefit());
      certs.push_back(two_alternating_certificate(space, z, w, config.limits, config.seed, tol));
      certs.push_back(fuzzy_core_certificate(space, z, pi, w, config.fuzzy_samples, config.seed,
                                             design.pricing_measure, config.limits, tol));
      certs.push_back(state_fairness_certificate(space, family, pi, w, config.limits, tol));
      certs.push_back(fuzzy_fairness_certificate(space, family, pi, w, config.fuzzy_samples,
                                                 config.seed, config.limits, tol));
      certs.push_back(state_maximality_certificate(space, family, w, config.limits.partition_budget,
                                                   config.seed, tol));
    }
    return detail::finish_report(std::move(record), certs);
  });
}

/// Certificate suite only, against supplied premia and/or payoffs. Whatever
/// is not supplied is taken from the standard design.
inline Report cmd_certify(const RunConfig& config,
                          const std::optional<std::vector<double>>& premia_override,
                          const std::optional<std::string>& payoff_override_path) {
  return detail::guarded("certify", [&] {
    const Portfolio p = load_portfolio(config.input_path);
    const double tol = detail::resolve_tolerance(config, p);
    const auto& space = p.space;
    const auto& x = p.liabilities;
    const auto& w = p.distortion;

    const ContractDesign design = design_contracts(space, x, w, tol);

    std::optional<PremiumAllocation> premia;
    if (premia_override) {
      if (premia_override->size() != x.players()) {
        throw DimensionMismatch("--premia has " + std::to_string(premia_override->size()) +
                                " entries, expected " + std::to_string(x.players()) +
                                " (players 0..N)");
      }
      premia.emplace(*premia_override);
    } else {
      premia.emplace(design.premia);
    }
    const PayoffMatrix payoffs = payoff_override_path
                                     ? load_payoffs(*payoff_override_path, x.players(), x.outcomes())
                                     : design.payoffs;

    nlohmann::ordered_json record;
    record["config"] = detail::config_json(config, "certify", tol);
    record["portfolio"] = portfolio_to_json(p);
    record["premia_source"] = premia_override ? "override" : "fair";
    record["payoffs_source"] = payoff_override_path ? *payoff_override_path : "standard";
    record["k"] = design.aggregate.premium;
    record["K"] = design.aggregate.capital;
    record["premia"] = detail::numbers(premia->values());
    record["payoffs"] = detail::rows_json(payoffs.rows());

    const auto certs = certify_contracts(space, x, *premia, payoffs, design.pricing_measure, w,
                                         config.limits, tol);
    return detail::finish_report(std::move(record), certs);
  });
}

namespace detail {

inline std::string fixed5(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(5) << v;
  std::string s = os.str();
  if (s == "-0.00000") s.erase(0, 1);
  return s;
}

inline std::string fixed5(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "-inf";
  return fixed5(v.get<double>());
}

inline std::string vector5(const nlohmann::ordered_json& arr) {
  std::string s = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ", ";
    s += fixed5(arr[i]);
  }
  return s + ")";
}

inline void table5(std::ostringstream& os, const std::string& title,
                   const nlohmann::ordered_json& rows) {
  os << title << " (rows: players 0..N, columns: outcomes)\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "  " << std::setw(3) << i;
    for (const auto& v : rows[i]) os << "  " << std::setw(12) << fixed5(v);
    os << "\n";
  }
}

}  // namespace detail

inline std::string Report::render(OutputFormat format) const {
  if (format == OutputFormat::json) return record.dump(2) + "\n";

  std::ostringstream os;
  if (record.contains("error")) {
    const auto& e = record["error"];
    os << "error: " << e["kind"].get<std::string>();
    if (e.contains("field")) os << " [" << e["field"].get<std::string>() << "]";
    os << ": " << e["message"].get<std::string>() << "\n";
    return os.str();
  }

  const auto& r = record;
  os << r["config"]["command"].get<std::string>() << " " << r["config"]["input"].get<std::string>()
     << "\n";
  if (r.contains("warnings")) {
    for (const auto& warning : r["warnings"]) os << "warning: " << warning.get<std::string>() << "\n";
  }
  os << "k = " << detail::fixed5(r["k"]) << "\n";
  os << "K = " << detail::fixed5(r["K"]) << "\n";
  if (r.contains("default_probability")) {
    os << "default probability = " << detail::fixed5(r["default_probability"]) << "\n";
  }
  if (r.contains("pricing_measure")) os << "Q* = " << detail::vector5(r["pricing_measure"]) << "\n";
  os << "pi = " << detail::vector5(r["premia"]) << "\n";
  if (r.contains("alpha")) os << "alpha = " << detail::vector5(r["alpha"]) << "\n";
  detail::table5(os, "payoffs Y", r["payoffs"]);
  if (r.contains("benefits")) detail::table5(os, "benefits B = (Y - X)^+", r["benefits"]);

  os << "certificates:\n";
  for (const auto& c : r["certificates"]) {
    os << "  " << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << std::left << std::setw(20)
       << c["name"].get<std::string>() << std::right
       << " worst slack " << detail::fixed5(c["worst_slack"]);
    if (!c["worst_label"].get<std::string>().empty()) {
      os << " at " << c["worst_label"].get<std::string>();
    }
    os << " (" << c["checked_count"].get<std::size_t>() << " checks)\n";
  }
  os << (r["all_passed"].get<bool>() ? "all certificates pass" : "certificate failure") << "\n";
  return os.str();
}

}  // namespace fairins

#endif  // FAIRINS_REPORT_HPP
