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

#ifndef FAIRINS_CERTIFICATE_HPP
#define FAIRINS_CERTIFICATE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace fairins {

inline constexpr double kDefaultTolerance = 1e-9;

/// Exhaustive-enumeration caps. Beyond them, exhaustive checks throw
/// ExhaustionLimitExceeded and the pair/partition checks fall back to seeded
/// sampling.
struct EnumerationLimits {
  std::size_t max_players = 20;
  std::size_t max_outcomes = 20;
  std::uint64_t max_pair_checks = std::uint64_t{1} << 20;
  std::uint64_t partition_budget = 203;
};

/// Result of a fairness/admissibility/core/maximality check. Slacks are
/// "rhs - lhs" of the checked inequality; negative means violated.
struct Certificate {
  std::string name;
  bool passed = true;
  std::string worst_label;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::size_t checked_count = 0;
  std::optional<std::uint64_t> seed;
};

/// Tracks the minimal slack over a stream of constraints. The first
/// constraint attaining the minimum keeps the label, so enumerating in
/// increasing mask order reports the lowest mask on ties.
class SlackTracker {
 public:
  explicit SlackTracker(std::string name) { cert_.name = std::move(name); }

  template <typename LabelFn>
  void observe(double slack, LabelFn&& label) {
    ++cert_.checked_count;
    if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
    if (slack < cert_.worst_slack) {
      cert_.worst_slack = slack;
      cert_.worst_label = label();
    }
  }

  /// Equality constraint: slack is -|lhs - rhs|.
  template <typename LabelFn>
  void observe_equal(double lhs, double rhs, LabelFn&& label) {
    observe(-std::abs(lhs - rhs), std::forward<LabelFn>(label));
  }

  void set_seed(std::uint64_t seed) { cert_.seed = seed; }

  Certificate finish(double tol) && {
    cert_.passed = cert_.worst_slack >= -tol;
    return std::move(cert_);
  }

 private:
  Certificate cert_;
};

inline void to_json(nlohmann::ordered_json& j, const Certificate& c) {
  j = nlohmann::ordered_json::object();
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["worst_label"] = c.worst_label;
  if (std::isfinite(c.worst_slack)) {
    j["worst_slack"] = c.worst_slack;
  } else {
    j["worst_slack"] = nullptr;
  }
  j["checked_count"] = c.checked_count;
  if (c.seed) j["seed"] = *c.seed;
}

}  // namespace fairins

#endif  // FAIRINS_CERTIFICATE_HPP
