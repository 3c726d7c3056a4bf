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
 * \file fairins/game.hpp
 *
 * \brief Cooperative cost games built on the valuation.
 *
 * Two games live here:
 *  - the (N+1)-player game c^X(S) = P(sum_{i in S} X_i) over the insurer
 *    (player 0) and the insured agents;
 *  - the state game c^Z(A) = P(Z 1_A) whose players are the outcomes, with
 *    its fuzzy extension c^Z(lambda) = P(lambda Z).
 */

#ifndef FAIRINS_GAME_HPP
#define FAIRINS_GAME_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fairins/certificate.hpp"
#include "fairins/distortion.hpp"
#include "fairins/enumeration.hpp"
#include "fairins/liability.hpp"
#include "fairins/prob_space.hpp"
#include "fairins/valuation.hpp"

namespace fairins {

/// Set of players 0..N; player 0 is the insurer.
class Coalition {
 public:
  Coalition(std::size_t players, std::uint64_t mask) : players_(players), mask_(mask) {
    if (players > 64) throw ExhaustionLimitExceeded("coalitions support at most 64 players");
  }

  static Coalition of(std::size_t players, std::initializer_list<std::size_t> members) {
    std::uint64_t mask = 0;
    for (std::size_t i : members) mask |= std::uint64_t{1} << i;
    return Coalition(players, mask);
  }
  static Coalition grand(std::size_t players) {
    return Coalition(players, players == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << players) - 1);
  }

  std::size_t players() const noexcept { return players_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }

  std::string label() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < players_; ++i) {
      if (!contains(i)) continue;
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

 private:
  std::size_t players_;
  std::uint64_t mask_;
};

inline RandomVariable coalition_sum(std::span<const RandomVariable> rows, const Coalition& s) {
  RandomVariable total = RandomVariable::constant(rows.empty() ? 0 : rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (s.contains(i)) total = total + rows[i];
  }
  return total;
}

/// Valuation of the summed rows of a coalition. Used both for c^X (rows =
/// liabilities) and for residual games c^{X-Y}.
inline double coalition_cost(const FiniteProbSpace& space, std::span<const RandomVariable> rows,
                             const Coalition& s, const Distortion& w) {
  if (s.mask() == 0) return 0.0;
  return choquet_value(space, w, coalition_sum(rows, s));
}

inline double coalition_cost(const FiniteProbSpace& space, const LiabilityVector& x,
                             const Coalition& s, const Distortion& w) {
  return coalition_cost(space, x.rows(), s, w);
}

/// Core membership of a premium vector in the game c^X: grand coalition
/// equality plus sum_{i in S} pi_i <= c^X(S) for all 2^(N+1) coalitions.
inline Certificate core_certificate(const FiniteProbSpace& space, const LiabilityVector& x,
                                    const PremiumAllocation& pi, const Distortion& w,
                                    const EnumerationLimits& limits = {},
                                    double tol = kDefaultTolerance) {
  const std::size_t n = x.players();
  if (pi.size() != n) {
    throw DimensionMismatch("premium vector has " + std::to_string(pi.size()) +
                            " entries, expected " + std::to_string(n));
  }
  if (n > limits.max_players) {
    throw ExhaustionLimitExceeded("core check enumerates 2^" + std::to_string(n) +
                                  " coalitions; limit is 2^" + std::to_string(limits.max_players));
  }
  SlackTracker tracker("core");
  const Coalition grand = Coalition::grand(n);
  tracker.observe_equal(pi.total(), coalition_cost(space, x, grand, w),
                        [&] { return "sum=c" + grand.label(); });
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Coalition s(n, mask);
    double allocated = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.contains(i)) allocated += pi[i];
    }
    tracker.observe(coalition_cost(space, x, s, w) - allocated, [&] { return s.label(); });
  }
  return std::move(tracker).finish(tol);
}

/// c^Z(A) = P(Z 1_A) for a nonnegative Z.
inline double event_cost(const FiniteProbSpace& space, const RandomVariable& z, const Event& a,
                         const Distortion& w) {
  space.require_compatible(z);
  if (z.min() < 0.0) throw NegativeLiability("state-game liability Z must be nonnegative");
  return choquet_value(space, w, restrict_to(z, a));
}

/// Submodularity of c^Z: c(A n B) + c(A u B) <= c(A) + c(B). Exhaustive
/// over all 4^M ordered pairs when that fits in limits.max_pair_checks,
/// otherwise that many seeded uniform pairs.
inline Certificate two_alternating_certificate(const FiniteProbSpace& space,
                                               const RandomVariable& z, const Distortion& w,
                                               const EnumerationLimits& limits = {},
                                               std::uint64_t seed = 42,
                                               double tol = kDefaultTolerance) {
  space.require_compatible(z);
  if (z.min() < 0.0) throw NegativeLiability("state-game liability Z must be nonnegative");
  const std::size_t m = space.size();
  SlackTracker tracker("two_alternating");

  auto cost = [&](std::uint64_t mask) { return event_cost(space, z, Event::from_mask(m, mask), w); };
  auto label = [m](std::uint64_t a, std::uint64_t b) {
    return "A=" + Event::from_mask(m, a).label() + ",B=" + Event::from_mask(m, b).label();
  };

  const bool exhaustive = 2 * m < 64 && (std::uint64_t{1} << (2 * m)) <= limits.max_pair_checks;
  if (exhaustive) {
    const std::uint64_t count = std::uint64_t{1} << m;
    std::vector<double> c(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) c[mask] = cost(mask);
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        tracker.observe(c[a] + c[b] - c[a & b] - c[a | b], [&] { return label(a, b); });
      }
    }
  } else {
    if (m > 64) throw ExhaustionLimitExceeded("event masks support at most 64 outcomes");
    std::mt19937_64 rng(seed);
    const std::uint64_t full = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    for (std::uint64_t s = 0; s < limits.max_pair_checks; ++s) {
      const std::uint64_t a = rng() & full;
      const std::uint64_t b = rng() & full;
      tracker.observe(cost(a) + cost(b) - cost(a & b) - cost(a | b), [&] { return label(a, b); });
    }
    tracker.set_seed(seed);
  }
  return std::move(tracker).finish(tol);
}

/// Integral of lambda against a per-outcome allocation nu.
inline double allocation_integral(std::span<const double> nu, const RandomVariable& lambda) {
  detail::require_same_size(nu.size(), lambda.size());
  double s = 0.0;
  for (std::size_t j = 0; j < nu.size(); ++j) s += lambda[j] * nu[j];
  return s;
}

/// Fuzzy-core membership of an allocation nu (per-outcome masses) in the
/// state game: nu(Omega) = P(Z) and int lambda dnu <= P(lambda Z) for every
/// indicator lambda (exhaustive, M <= limits.max_outcomes) and for
/// `sample_count` seeded interior lambdas.
///
/// When `q` is supplied the sound constructive check is added: q lies in the
/// scenario set, attains P(Z), and nu = Z q outcome by outcome.
inline Certificate fuzzy_core_certificate(const FiniteProbSpace& space, const RandomVariable& z,
                                          std::span<const double> nu, const Distortion& w,
                                          std::size_t sample_count, std::uint64_t seed,
                                          const std::optional<ScenarioMeasure>& q = std::nullopt,
                                          const EnumerationLimits& limits = {},
                                          double tol = kDefaultTolerance) {
  space.require_compatible(z);
  detail::require_same_size(space.size(), nu.size());
  if (z.min() < 0.0) throw NegativeLiability("state-game liability Z must be nonnegative");
  const std::size_t m = space.size();
  const double capital = choquet_value(space, w, z);
  SlackTracker tracker("fuzzy_core");

  double total = 0.0;
  for (double v : nu) total += v;
  tracker.observe_equal(total, capital, [] { return "nu(Omega)=P(Z)"; });

  if (m <= limits.max_outcomes) {
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const Event a = Event::from_mask(m, mask);
      const RandomVariable lambda = a.indicator();
      tracker.observe(choquet_value(space, w, lambda * z) - allocation_integral(nu, lambda),
                      [&] { return "lambda=1" + a.label(); });
    }
  }

  FuzzyCoalitionSampler sampler(m, seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    const RandomVariable lambda = sampler.next();
    tracker.observe(choquet_value(space, w, lambda * z) - allocation_integral(nu, lambda),
                    [&] { return "sample#" + std::to_string(s); });
  }
  tracker.set_seed(seed);

  if (q) {
    const Certificate member = scenario_membership(space, w, *q, limits, tol);
    tracker.observe(member.worst_slack, [&] { return "Q in S at " + member.worst_label; });
    tracker.observe_equal(expectation(*q, z), capital, [] { return "E_Q[Z]=P(Z)"; });
    for (std::size_t j = 0; j < m; ++j) {
      tracker.observe_equal(nu[j], z[j] * (*q)[j], [&] { return "nu=Z*Q at w" + std::to_string(j); });
    }
  }
  return std::move(tracker).finish(tol);
}

enum class Preference { prefers_xi, prefers_eta, indifferent };

inline const char* to_string(Preference p) {
  switch (p) {
    case Preference::prefers_xi: return "prefers_xi";
    case Preference::prefers_eta: return "prefers_eta";
    case Preference::indifferent: return "indifferent";
  }
  return "indifferent";
}

/// Coalition preference between two payoff vectors: the one leaving the
/// cheaper residual P(sum_{i in S} (X_i - payoff_i)) is preferred.
inline Preference preference_compare(const FiniteProbSpace& space, const LiabilityVector& x,
                                     const Coalition& s, std::span<const RandomVariable> xi,
                                     std::span<const RandomVariable> eta, const Distortion& w,
                                     double tol = kDefaultTolerance) {
  if (xi.size() != x.players() || eta.size() != x.players()) {
    throw DimensionMismatch("payoff vectors must have one row per player");
  }
  std::vector<RandomVariable> residual_xi;
  std::vector<RandomVariable> residual_eta;
  for (std::size_t i = 0; i < x.players(); ++i) {
    residual_xi.push_back(x.row(i) - xi[i]);
    residual_eta.push_back(x.row(i) - eta[i]);
  }
  const double cost_xi = coalition_cost(space, residual_xi, s, w);
  const double cost_eta = coalition_cost(space, residual_eta, s, w);
  if (cost_xi < cost_eta - tol) return Preference::prefers_xi;
  if (cost_eta < cost_xi - tol) return Preference::prefers_eta;
  return Preference::indifferent;
}

}  // namespace fairins

#endif  // FAIRINS_GAME_HPP
