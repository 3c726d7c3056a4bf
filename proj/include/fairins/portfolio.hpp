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
 * \file fairins/portfolio.hpp
 *
 * \brief Portfolio and payoff files.
 *
 * Portfolio file:
 * \code
 * {"probabilities": [0.5, 0.3, 0.2],
 *  "k0": 1,
 *  "agents": [{"name": "a", "losses": [0, 2, 2]}, ...],
 *  "distortion": {"kind": "power", "gamma": 0.5},
 *  "tolerance": 1e-9}                                // optional
 * \endcode
 *
 * Payoff file (rows are players 0..N, columns outcomes):
 * \code
 * {"payoffs": [[...], [...], ...]}
 * \endcode
 */

#ifndef FAIRINS_PORTFOLIO_HPP
#define FAIRINS_PORTFOLIO_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairins/distortion.hpp"
#include "fairins/errors.hpp"
#include "fairins/liability.hpp"
#include "fairins/prob_space.hpp"

namespace fairins {

struct Portfolio {
  FiniteProbSpace space;
  LiabilityVector liabilities;
  Distortion distortion;
  std::vector<std::string> agent_names;
  std::optional<double> tolerance;
};

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(field, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputParseError("cannot open \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputParseError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

}  // namespace detail

inline Portfolio parse_portfolio(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("portfolio", "expected a JSON object");
  if (!j.contains("probabilities")) throw ValidationError("probabilities", "missing");
  auto probabilities = detail::number_array(j["probabilities"], "probabilities");
  std::optional<FiniteProbSpace> space;
  try {
    space.emplace(std::move(probabilities));
  } catch (const Error& e) {
    throw ValidationError("probabilities", e.what());
  }

  double k0 = 0.0;
  if (j.contains("k0")) {
    if (!j["k0"].is_number()) throw ValidationError("k0", "expected a number");
    k0 = j["k0"].get<double>();
  }

  if (!j.contains("agents") || !j["agents"].is_array()) {
    throw ValidationError("agents", "missing or not an array");
  }
  std::vector<std::string> names;
  std::vector<RandomVariable> losses;
  for (std::size_t i = 0; i < j["agents"].size(); ++i) {
    const auto& agent = j["agents"][i];
    const std::string field = "agents[" + std::to_string(i) + "]";
    if (!agent.is_object()) throw ValidationError(field, "expected an object");
    if (agent.contains("name")) {
      if (!agent["name"].is_string()) throw ValidationError(field + ".name", "expected a string");
      names.push_back(agent["name"].get<std::string>());
    } else {
      names.push_back("agent" + std::to_string(i + 1));
    }
    if (!agent.contains("losses")) throw ValidationError(field + ".losses", "missing");
    losses.emplace_back(detail::number_array(agent["losses"], field + ".losses"));
  }
  LiabilityVector liabilities(*space, k0, std::move(losses));

  if (!j.contains("distortion")) throw ValidationError("distortion", "missing");
  Distortion w = j["distortion"].get<Distortion>();

  std::optional<double> tolerance;
  if (j.contains("tolerance")) {
    if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0.0)) {
      throw ValidationError("tolerance", "expected a positive number");
    }
    tolerance = j["tolerance"].get<double>();
  }
  return Portfolio{std::move(*space), std::move(liabilities), std::move(w), std::move(names),
                   tolerance};
}

inline Portfolio load_portfolio(const std::string& path) {
  return parse_portfolio(detail::read_json_file(path));
}

inline nlohmann::ordered_json portfolio_to_json(const Portfolio& p) {
  nlohmann::ordered_json j;
  j["probabilities"] = std::vector<double>(p.space.probabilities().begin(), p.space.probabilities().end());
  j["k0"] = p.liabilities.k0();
  j["agents"] = nlohmann::ordered_json::array();
  for (std::size_t i = 1; i < p.liabilities.players(); ++i) {
    const auto values = p.liabilities.row(i).values();
    nlohmann::ordered_json agent;
    agent["name"] = p.agent_names[i - 1];
    agent["losses"] = std::vector<double>(values.begin(), values.end());
    j["agents"].push_back(std::move(agent));
  }
  j["distortion"] = p.distortion;
  if (p.tolerance) j["tolerance"] = *p.tolerance;
  return j;
}

inline PayoffMatrix parse_payoffs(const nlohmann::json& j, std::size_t players, std::size_t outcomes) {
  if (!j.is_object() || !j.contains("payoffs") || !j["payoffs"].is_array()) {
    throw ValidationError("payoffs", "expected an object with a \"payoffs\" array of rows");
  }
  const auto& rows_json = j["payoffs"];
  if (rows_json.size() != players) {
    throw DimensionMismatch("payoff file has " + std::to_string(rows_json.size()) +
                            " rows, expected " + std::to_string(players) + " (players 0..N)");
  }
  std::vector<RandomVariable> rows;
  for (std::size_t i = 0; i < rows_json.size(); ++i) {
    auto values = detail::number_array(rows_json[i], "payoffs[" + std::to_string(i) + "]");
    if (values.size() != outcomes) {
      throw DimensionMismatch("payoff row " + std::to_string(i) + " has " +
                              std::to_string(values.size()) + " entries, expected " +
                              std::to_string(outcomes));
    }
    rows.emplace_back(std::move(values));
  }
  return PayoffMatrix(std::move(rows));
}

inline PayoffMatrix load_payoffs(const std::string& path, std::size_t players, std::size_t outcomes) {
  return parse_payoffs(detail::read_json_file(path), players, outcomes);
}

}  // namespace fairins

#endif  // FAIRINS_PORTFOLIO_HPP
