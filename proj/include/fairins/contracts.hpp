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
 * \file fairins/contracts.hpp
 *
 * \brief Design and certification of insurance contracts with default risk.
 *
 * Given losses X_1..X_N and equity k0, the insurer collects the total
 * premium k = P(S^X), S^X = sum_i X_i, and holds the capital K = k + k0.
 * It defaults on {S^X > K}, where the capital is rationed to the insured in
 * proportion to their claims and no dividend is paid. The designed contracts
 * price each agent at pi_i = E_Q*[X_i] for Q* in the subgradient of P at S^X
 * and split the surplus (k - S^X)^+ in constant shares
 *
 *   alpha_i = E_Q*[(X_i / S^X) (S^X - K)^+] / P((S^X - k)^+),   i >= 1,
 *   alpha_0 = 1 - sum_{i>=1} alpha_i.
 */

#ifndef FAIRINS_CONTRACTS_HPP
#define FAIRINS_CONTRACTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fairins/certificate.hpp"
#include "fairins/distortion.hpp"
#include "fairins/game.hpp"
#include "fairins/liability.hpp"
#include "fairins/prob_space.hpp"
#include "fairins/valuation.hpp"

namespace fairins {

struct Aggregate {
  RandomVariable total_loss;  ///< S^X
  double premium = 0.0;       ///< k = P(S^X)
  double capital = 0.0;       ///< K = k + k0
  Event default_event;        ///< {S^X > K}
  double default_probability = 0.0;
  bool degenerate = false;    ///< default is impossible
};

inline Aggregate aggregate(const FiniteProbSpace& space, const LiabilityVector& x,
                           const Distortion& w) {
  if (x.outcomes() != space.size()) throw SpaceMismatch("liabilities do not match the space");
  Aggregate agg;
  agg.total_loss = x.total_loss();
  agg.premium = choquet_value(space, w, agg.total_loss);
  agg.capital = agg.premium + x.k0();
  if (!(agg.capital > 0.0)) {
    throw DegeneratePortfolio("total capital K must be positive (all losses and equity are zero)");
  }
  std::vector<bool> in_default(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) in_default[j] = agg.total_loss[j] > agg.capital;
  agg.default_event = Event(std::move(in_default));
  agg.default_probability = space.probability(agg.default_event);
  agg.degenerate = agg.default_event.is_empty();
  return agg;
}

/// pi_0 = k0, pi_i = E_Q*[X_i]. Q* must attain P(S^X).
inline PremiumAllocation fair_premia(const FiniteProbSpace& space, const LiabilityVector& x,
                                     const ScenarioMeasure& q, const Distortion& w,
                                     double tol = kDefaultTolerance) {
  detail::require_same_size(space.size(), q.size());
  const RandomVariable s = x.total_loss();
  const double k = choquet_value(space, w, s);
  const double attained = expectation(q, s);
  if (std::abs(attained - k) > tol * std::max(1.0, std::abs(k))) {
    throw NotASubgradient("E_Q[S] = " + std::to_string(attained) + " does not attain P(S) = " +
                          std::to_string(k));
  }
  std::vector<double> pi{x.k0()};
  for (std::size_t i = 1; i < x.players(); ++i) pi.push_back(expectation(q, x.row(i)));
  return PremiumAllocation(std::move(pi));
}

inline BenefitShares benefit_shares(const FiniteProbSpace& space, const LiabilityVector& x,
                                    const ScenarioMeasure& q, const Distortion& w,
                                    double tol = kDefaultTolerance) {
  const Aggregate agg = aggregate(space, x, w);
  const RandomVariable& s = agg.total_loss;
  const double denominator = choquet_value(space, w, positive_part(s - agg.premium));
  if (denominator <= tol) {
    throw DegeneratePortfolio("P((S - k)^+) vanishes: the total premium already covers every loss");
  }
  const RandomVariable excess = positive_part(s - agg.capital);
  std::vector<double> alpha(x.players(), 0.0);
  double agents_total = 0.0;
  for (std::size_t i = 1; i < x.players(); ++i) {
    std::vector<double> share(space.size(), 0.0);
    for (std::size_t j = 0; j < space.size(); ++j) {
      // 0/0 := 0; the excess is zero wherever S^X = 0 anyway.
      if (s[j] > 0.0) share[j] = x.row(i)[j] / s[j] * excess[j];
    }
    alpha[i] = expectation(q, RandomVariable(std::move(share))) / denominator;
    agents_total += alpha[i];
  }
  alpha[0] = std::max(0.0, 1.0 - agents_total);
  return BenefitShares(std::move(alpha));
}

/// Standard payoffs for constant surplus shares alpha:
///   Y_i = [X_i + alpha_i (k - S)] 1{S <= k} + X_i (K/S ^ 1) 1{S > k},
///   Y_0 = [k0 + alpha_0 (k - S)] 1{S <= k} + (K - S)^+ 1{S > k}.
inline PayoffMatrix standard_payoffs(const FiniteProbSpace& space, const LiabilityVector& x,
                                     const BenefitShares& alpha, const Distortion& w) {
  if (alpha.size() != x.players()) {
    throw DimensionMismatch("benefit shares need one entry per player");
  }
  const Aggregate agg = aggregate(space, x, w);
  const double k = agg.premium;
  const double cap = agg.capital;
  const RandomVariable& s = agg.total_loss;
  std::vector<RandomVariable> rows;
  rows.reserve(x.players());
  {
    std::vector<double> y0(space.size());
    for (std::size_t j = 0; j < space.size(); ++j) {
      y0[j] = s[j] <= k ? x.k0() + alpha[0] * (k - s[j]) : std::max(cap - s[j], 0.0);
    }
    rows.emplace_back(std::move(y0));
  }
  for (std::size_t i = 1; i < x.players(); ++i) {
    std::vector<double> yi(space.size());
    for (std::size_t j = 0; j < space.size(); ++j) {
      const double xij = x.row(i)[j];
      yi[j] = s[j] <= k ? xij + alpha[i] * (k - s[j]) : xij * std::min(cap / s[j], 1.0);
    }
    rows.emplace_back(std::move(yi));
  }
  return PayoffMatrix(std::move(rows));
}

/// Benefit participations B_i = (Y_i - X_i)^+, one row per player.
inline std::vector<RandomVariable> benefits(const LiabilityVector& x, const PayoffMatrix& y) {
  std::vector<RandomVariable> out;
  for (std::size_t i = 0; i < x.players(); ++i) out.push_back(positive_part(y.row(i) - x.row(i)));
  return out;
}

namespace detail {
inline void require_payoff_shape(const LiabilityVector& x, const PayoffMatrix& y) {
  if (y.players() != x.players() || y.outcomes() != x.outcomes()) {
    throw DimensionMismatch("payoff matrix must be " + std::to_string(x.players()) + "x" +
                            std::to_string(x.outcomes()) + ", got " + std::to_string(y.players()) +
                            "x" + std::to_string(y.outcomes()));
  }
}
}  // namespace detail

/// Admissibility of a payoff of total mass K: every column sums to K,
/// entries are nonnegative, the capital is rationed proportionally and no
/// dividend is paid in default, indemnities are paid in full otherwise, and
/// Y_i is sigma(X_i, S^X)-measurable.
inline Certificate admissibility_certificate(const FiniteProbSpace& space,
                                             const LiabilityVector& x, const PayoffMatrix& y,
                                             const Distortion& w, double tol = kDefaultTolerance) {
  detail::require_payoff_shape(x, y);
  const Aggregate agg = aggregate(space, x, w);
  const RandomVariable& s = agg.total_loss;
  const double cap = agg.capital;
  SlackTracker tracker("admissibility");
  auto at = [](std::size_t i, std::size_t j) {
    return "Y" + std::to_string(i) + " at w" + std::to_string(j);
  };
  for (std::size_t j = 0; j < space.size(); ++j) {
    tracker.observe_equal(y.column_sum(j), cap, [&] { return "total mass K at w" + std::to_string(j); });
    for (std::size_t i = 0; i < x.players(); ++i) {
      tracker.observe(y.row(i)[j], [&] { return "nonnegative " + at(i, j); });
    }
    if (s[j] > cap) {
      tracker.observe_equal(y.row(0)[j], 0.0, [&] { return "no dividend in default " + at(0, j); });
      for (std::size_t i = 1; i < x.players(); ++i) {
        tracker.observe_equal(y.row(i)[j], x.row(i)[j] / s[j] * cap,
                              [&] { return "proportional rationing " + at(i, j); });
      }
    } else {
      for (std::size_t i = 1; i < x.players(); ++i) {
        tracker.observe(y.row(i)[j] - x.row(i)[j], [&] { return "full indemnity " + at(i, j); });
      }
    }
  }
  for (std::size_t i = 0; i < x.players(); ++i) {
    const std::vector<RandomVariable> generators{x.row(i), s};
    tracker.observe(-measurability_defect(y.row(i), generators),
                    [&] { return "Y" + std::to_string(i) + " sigma(X_i,S)-measurable"; });
  }
  return std::move(tracker).finish(tol);
}

/// Fair payoff given premia: c^{X-Y}(S) + sum_{i in S} pi_i <= c^X(S) for
/// every coalition S.
inline Certificate payoff_fairness_certificate(const FiniteProbSpace& space,
                                               const LiabilityVector& x,
                                               const PremiumAllocation& pi, const PayoffMatrix& y,
                                               const Distortion& w,
                                               const EnumerationLimits& limits = {},
                                               double tol = kDefaultTolerance) {
  detail::require_payoff_shape(x, y);
  const std::size_t n = x.players();
  if (pi.size() != n) throw DimensionMismatch("premium vector needs one entry per player");
  if (n > limits.max_players) {
    throw ExhaustionLimitExceeded("payoff fairness enumerates 2^" + std::to_string(n) +
                                  " coalitions; limit is 2^" + std::to_string(limits.max_players));
  }
  std::vector<RandomVariable> residual;
  for (std::size_t i = 0; i < n; ++i) residual.push_back(x.row(i) - y.row(i));
  SlackTracker tracker("payoff_fairness");
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Coalition s(n, mask);
    double allocated = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.contains(i)) allocated += pi[i];
    }
    const double slack =
        coalition_cost(space, x, s, w) - coalition_cost(space, residual, s, w) - allocated;
    tracker.observe(slack, [&] { return s.label(); });
  }
  return std::move(tracker).finish(tol);
}

/// Maximality: the negative parts of the residuals X_i - Y_i attain the
/// comonotone lower bound sum_i P(-(X_i - Y_i)^-) = P(-(Z - K)^-), where
/// Z = S^X + k0 is the sum of all N+1 rows (so Z - K = S^X - k).
inline Certificate maximality_certificate(const FiniteProbSpace& space, const LiabilityVector& x,
                                          const PayoffMatrix& y, const Distortion& w,
                                          double tol = kDefaultTolerance) {
  detail::require_payoff_shape(x, y);
  const Aggregate agg = aggregate(space, x, w);
  double lhs = 0.0;
  for (std::size_t i = 0; i < x.players(); ++i) {
    lhs += choquet_value(space, w, -negative_part(x.row(i) - y.row(i)));
  }
  const RandomVariable z = agg.total_loss + x.k0();
  const double rhs = choquet_value(space, w, -negative_part(z - agg.capital));
  SlackTracker tracker("maximality");
  tracker.observe_equal(lhs, rhs, [] { return "sum_i P(-(X_i-Y_i)^-) = P(-(Z-K)^-)"; });
  return std::move(tracker).finish(tol);
}

/// Shareholder identities P(X_0 - Y_0) = 0 and k0 = E_Q*[Y_0].
inline Certificate shareholder_checks(const FiniteProbSpace& space, const LiabilityVector& x,
                                      const PayoffMatrix& y, const ScenarioMeasure& q,
                                      const Distortion& w, double tol = kDefaultTolerance) {
  detail::require_payoff_shape(x, y);
  SlackTracker tracker("shareholder");
  tracker.observe_equal(choquet_value(space, w, x.row(0) - y.row(0)), 0.0,
                        [] { return "P(X0-Y0)=0"; });
  tracker.observe_equal(expectation(q, y.row(0)), x.k0(), [] { return "E_Q*[Y0]=k0"; });
  return std::move(tracker).finish(tol);
}

/// Output of the full design pipeline.
struct ContractDesign {
  Aggregate aggregate;
  ScenarioMeasure pricing_measure;  ///< canonical Q* in the subgradient at S^X
  PremiumAllocation premia;
  BenefitShares alpha;
  PayoffMatrix payoffs;
  std::vector<std::string> warnings;
};

/// aggregate -> Q* -> fair premia -> benefit shares -> standard payoffs.
/// Degenerate portfolios (no possible default) get alpha = (1, 0, ..., 0)
/// and a warning.
inline ContractDesign design_contracts(const FiniteProbSpace& space, const LiabilityVector& x,
                                       const Distortion& w, double tol = kDefaultTolerance) {
  Aggregate agg = aggregate(space, x, w);
  ScenarioMeasure q = subgradient_element(space, w, agg.total_loss);
  PremiumAllocation pi = fair_premia(space, x, q, w, tol);
  std::vector<std::string> warnings;
  std::vector<double> fallback(x.players(), 0.0);
  fallback[0] = 1.0;
  BenefitShares alpha{fallback};
  if (agg.degenerate) {
    warnings.emplace_back("degenerate: no default risk");
  } else {
    alpha = benefit_shares(space, x, q, w, tol);
  }
  PayoffMatrix y = standard_payoffs(space, x, alpha, w);
  return ContractDesign{std::move(agg), std::move(q),     std::move(pi),
                        std::move(alpha), std::move(y), std::move(warnings)};
}

/// Every contract-level certificate for the given premia and payoffs.
inline std::vector<Certificate> certify_contracts(const FiniteProbSpace& space,
                                                  const LiabilityVector& x,
                                                  const PremiumAllocation& pi,
                                                  const PayoffMatrix& y, const ScenarioMeasure& q,
                                                  const Distortion& w,
                                                  const EnumerationLimits& limits = {},
                                                  double tol = kDefaultTolerance) {
  return {core_certificate(space, x, pi, w, limits, tol),
          admissibility_certificate(space, x, y, w, tol),
          payoff_fairness_certificate(space, x, pi, y, w, limits, tol),
          maximality_certificate(space, x, y, w, tol),
          shareholder_checks(space, x, y, q, w, tol)};
}

}  // namespace fairins

#endif  // FAIRINS_CONTRACTS_HPP
