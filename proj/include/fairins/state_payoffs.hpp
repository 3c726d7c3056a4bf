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
 * \file fairins/state_payoffs.hpp
 *
 * \brief State payoffs: the game whose coalitions are events.
 *
 * For a nonnegative exposure Z and capital K, an admissible family of state
 * payoffs assigns to each event A the payoff
 *
 *   Y(A) = alpha(A) (K - Z)^+ + (Z ^ K) 1_A,
 *
 * where alpha is a benefit-sharing probability measure. The canonical fair
 * family uses alpha* = (Z - K)^+ / E_Q*[(Z - K)^+] . Q* with Q* the canonical
 * subgradient of P at Z, and prices events by pi* = Z . Q*.
 *
 * Fairness of the canonical family relies on K = P(Z) (the capital of the
 * state game); the certificates take K from the family and check whatever
 * they are given.
 *
 * Not covered: recovering a measure in the subgradient of P at Z ^ K that
 * represents an arbitrary maximal fair family. For such a family with
 * benefit measure alpha~ one would have
 *   alpha~(A) = (pi*(A) - E_Qhat[(Z ^ K) 1_A]) / P((Z - K)^+)
 * for some Qhat attaining P(Z ^ K); finding Qhat is a feasibility problem
 * left to callers.
 */

#ifndef FAIRINS_STATE_PAYOFFS_HPP
#define FAIRINS_STATE_PAYOFFS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fairins/certificate.hpp"
#include "fairins/distortion.hpp"
#include "fairins/enumeration.hpp"
#include "fairins/game.hpp"
#include "fairins/prob_space.hpp"
#include "fairins/valuation.hpp"

namespace fairins {

/// A family A -> Y(A) of state payoffs together with the exposure Z and
/// capital K it refers to. `fuzzy_payoff(lambda)` is the integral of lambda
/// against the vector measure Y.
template <typename F>
concept StatePayoffs = requires(const F& f, const Event& a, const RandomVariable& lambda) {
  { f.payoff(a) } -> std::convertible_to<RandomVariable>;
  { f.fuzzy_payoff(lambda) } -> std::convertible_to<RandomVariable>;
  { f.z() } -> std::convertible_to<const RandomVariable&>;
  { f.capital() } -> std::convertible_to<double>;
};

/// State payoffs generated by a scalar benefit-sharing measure, stored as
/// per-outcome masses.
class StatePayoffFamily {
 public:
  StatePayoffFamily(std::vector<double> benefit, RandomVariable z, double capital)
      : benefit_(std::move(benefit)), z_(std::move(z)), capital_(capital) {
    detail::require_same_size(benefit_.size(), z_.size());
    if (z_.min() < 0.0) throw NegativeLiability("state-game liability Z must be nonnegative");
    if (!std::isfinite(capital_)) throw DomainError("capital must be finite");
    double total = 0.0;
    for (double a : benefit_) {
      if (!std::isfinite(a) || a < 0.0) throw InvalidMeasure("benefit masses must be nonnegative");
      total += a;
    }
    if (std::abs(total - 1.0) > kDefaultTolerance) {
      throw InvalidMeasure("benefit measure has total mass " + std::to_string(total) + ", expected 1");
    }
  }

  std::span<const double> benefit() const noexcept { return benefit_; }
  const RandomVariable& z() const noexcept { return z_; }
  double capital() const noexcept { return capital_; }

  /// alpha(A).
  double benefit_share(const Event& a) const {
    detail::require_same_size(benefit_.size(), a.size());
    double s = 0.0;
    for (std::size_t j = 0; j < benefit_.size(); ++j) {
      if (a.contains(j)) s += benefit_[j];
    }
    return s;
  }

  RandomVariable payoff(const Event& a) const {
    return benefit_share(a) * surplus() + restrict_to(min(z_, capital_), a);
  }

  RandomVariable fuzzy_payoff(const RandomVariable& lambda) const {
    return allocation_integral(benefit_, lambda) * surplus() + lambda * min(z_, capital_);
  }

  /// (K - Z)^+.
  RandomVariable surplus() const { return positive_part(-(z_ - capital_)); }

 private:
  std::vector<double> benefit_;
  RandomVariable z_;
  double capital_;
};

static_assert(StatePayoffs<StatePayoffFamily>);

/// The fair benefit measure alpha*_j = (Z_j - K)^+ q*_j / E_Q*[(Z - K)^+].
inline StatePayoffFamily alpha_star(const FiniteProbSpace& space, const RandomVariable& z,
                                    double capital, const ScenarioMeasure& q, const Distortion& w,
                                    double tol = kDefaultTolerance) {
  space.require_compatible(z);
  detail::require_same_size(space.size(), q.size());
  const double pz = choquet_value(space, w, z);
  if (std::abs(expectation(q, z) - pz) > tol * std::max(1.0, std::abs(pz))) {
    throw NotASubgradient("Q does not attain P(Z)");
  }
  const RandomVariable excess = positive_part(z - capital);
  const double denominator = expectation(q, excess);
  if (denominator <= tol) {
    throw DegenerateState("E_Q*[(Z - K)^+] vanishes: Z never exceeds the capital");
  }
  std::vector<double> masses(space.size());
  for (std::size_t j = 0; j < space.size(); ++j) masses[j] = excess[j] * q[j] / denominator;
  return StatePayoffFamily(std::move(masses), z, capital);
}

inline RandomVariable state_payoff(const StatePayoffFamily& family, const Event& a) {
  return family.payoff(a);
}

/// pi* = Z . Q*, as per-outcome masses.
inline std::vector<double> pi_star(const RandomVariable& z, const ScenarioMeasure& q) {
  detail::require_same_size(z.size(), q.size());
  std::vector<double> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * q[j];
  return out;
}

/// Recovers the scalar alpha(A) with Y_A = alpha(A) (K - Z)^+ + (Z ^ K) 1_A
/// from an admissible payoff for A.
inline double representation_extract(const RandomVariable& y_a, const Event& a,
                                     const RandomVariable& z, double capital,
                                     double tol = kDefaultTolerance) {
  detail::require_same_size(y_a.size(), z.size());
  detail::require_same_size(a.size(), z.size());
  auto where = [](std::size_t j) { return " at w" + std::to_string(j); };
  for (std::size_t j = 0; j < z.size(); ++j) {
    const bool solvent = z[j] < capital;
    if (a.contains(j) && !solvent && std::abs(y_a[j] - capital) > tol) {
      throw NotAdmissibleStatePayoff("payoff must equal K inside A on {Z >= K}" + where(j));
    }
    if (a.contains(j) && solvent && y_a[j] < z[j] - tol) {
      throw NotAdmissibleStatePayoff("payoff must cover Z inside A on {Z < K}" + where(j));
    }
    if (!a.contains(j) && !solvent && std::abs(y_a[j]) > tol) {
      throw NotAdmissibleStatePayoff("payoff outside A must vanish on {Z >= K}" + where(j));
    }
    if (!a.contains(j) && solvent && y_a[j] < -tol) {
      throw NotAdmissibleStatePayoff("payoff must be nonnegative" + where(j));
    }
  }
  bool found = false;
  double alpha = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double room = capital - z[j];
    if (room <= tol) continue;
    const double candidate = (y_a[j] - (a.contains(j) ? z[j] : 0.0)) / room;
    if (!found) {
      alpha = candidate;
      found = true;
    } else if (std::abs(candidate - alpha) > tol) {
      throw InconsistentRepresentation("benefit share differs across surplus outcomes (" +
                                       std::to_string(alpha) + " vs " + std::to_string(candidate) +
                                       where(j) + ")");
    }
  }
  return alpha;
}

/// Fairness slack for one fuzzy coalition lambda:
///   P(lambda Z) - P(lambda Z - Y(lambda)) - int lambda dpi.
template <StatePayoffs F>
double fuzzy_fairness_slack(const FiniteProbSpace& space, const F& family,
                            std::span<const double> pi, const RandomVariable& lambda,
                            const Distortion& w) {
  const RandomVariable exposure = lambda * family.z();
  return choquet_value(space, w, exposure) -
         choquet_value(space, w, exposure - family.fuzzy_payoff(lambda)) -
         allocation_integral(pi, lambda);
}

/// P(Z 1_A - Y(A)) + pi(A) <= P(Z 1_A) for all 2^M events.
template <StatePayoffs F>
Certificate state_fairness_certificate(const FiniteProbSpace& space, const F& family,
                                       std::span<const double> pi, const Distortion& w,
                                       const EnumerationLimits& limits = {},
                                       double tol = kDefaultTolerance) {
  const std::size_t m = space.size();
  space.require_compatible(family.z());
  detail::require_same_size(m, pi.size());
  if (m > limits.max_outcomes) {
    throw ExhaustionLimitExceeded("state fairness enumerates 2^" + std::to_string(m) +
                                  " events; limit is 2^" + std::to_string(limits.max_outcomes));
  }
  SlackTracker tracker("state_fairness");
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const Event a = Event::from_mask(m, mask);
    const RandomVariable exposure = restrict_to(family.z(), a);
    double priced = 0.0;
    for (std::size_t j : a.outcomes()) priced += pi[j];
    const double slack = choquet_value(space, w, exposure) -
                         choquet_value(space, w, exposure - family.payoff(a)) - priced;
    tracker.observe(slack, [&] { return a.label(); });
  }
  return std::move(tracker).finish(tol);
}

/// Fuzzy fairness over all indicator coalitions (when M fits the event cap)
/// and `sample_count` seeded interior fuzzy coalitions.
template <StatePayoffs F>
Certificate fuzzy_fairness_certificate(const FiniteProbSpace& space, const F& family,
                                       std::span<const double> pi, const Distortion& w,
                                       std::size_t sample_count, std::uint64_t seed,
                                       const EnumerationLimits& limits = {},
                                       double tol = kDefaultTolerance) {
  const std::size_t m = space.size();
  space.require_compatible(family.z());
  detail::require_same_size(m, pi.size());
  SlackTracker tracker("fuzzy_fairness");
  if (m <= limits.max_outcomes) {
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const Event a = Event::from_mask(m, mask);
      tracker.observe(fuzzy_fairness_slack(space, family, pi, a.indicator(), w),
                      [&] { return "lambda=1" + a.label(); });
    }
  }
  FuzzyCoalitionSampler sampler(m, seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    const RandomVariable lambda = sampler.next();
    tracker.observe(fuzzy_fairness_slack(space, family, pi, lambda, w),
                    [&] { return "sample#" + std::to_string(s); });
  }
  tracker.set_seed(seed);
  return std::move(tracker).finish(tol);
}

namespace detail {
inline std::string partition_label(const std::vector<Event>& blocks) {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) s += "|";
    s += blocks[b].label();
  }
  return s;
}

inline std::uint64_t event_mask(const Event& a) {
  std::uint64_t mask = 0;
  for (std::size_t j : a.outcomes()) mask |= std::uint64_t{1} << j;
  return mask;
}
}  // namespace detail

/// Maximality over finite partitions (A_n) of Omega:
///   sum_n P(Z 1_{A_n} - Y(A_n)) = P(-(K - Z)^+) + sum_n P((Z - K)^+ 1_{A_n}),
/// and, for every block A met, P(-(Z 1_A - Y(A))^-) = -E_Q*[(Z 1_A - Y(A))^-]
/// with Q* the canonical subgradient at Z. All partitions are checked when
/// their number (Bell(M)) is within `partition_budget`, otherwise
/// `partition_budget` seeded random partitions.
template <StatePayoffs F>
Certificate state_maximality_certificate(const FiniteProbSpace& space, const F& family,
                                         const Distortion& w, std::uint64_t partition_budget,
                                         std::uint64_t seed, double tol = kDefaultTolerance) {
  const std::size_t m = space.size();
  const RandomVariable& z = family.z();
  space.require_compatible(z);
  const double cap = family.capital();
  const ScenarioMeasure q = subgradient_element(space, w, z);
  const RandomVariable excess = positive_part(z - cap);
  const double shortfall_value = choquet_value(space, w, -positive_part(-(z - cap)));

  SlackTracker tracker("state_maximality");
  std::set<std::uint64_t> blocks_checked;

  auto check_partition = [&](const std::vector<std::size_t>& labels) {
    const std::vector<Event> blocks = partition_blocks(labels);
    double lhs = 0.0;
    double rhs = shortfall_value;
    for (const Event& a : blocks) {
      const RandomVariable residual = restrict_to(z, a) - family.payoff(a);
      lhs += choquet_value(space, w, residual);
      rhs += choquet_value(space, w, restrict_to(excess, a));
      if (m <= 64 && blocks_checked.insert(detail::event_mask(a)).second) {
        const RandomVariable neg = negative_part(residual);
        tracker.observe_equal(choquet_value(space, w, -neg), -expectation(q, neg),
                              [&] { return "pricing of residual shortfall on " + a.label(); });
      }
    }
    tracker.observe_equal(lhs, rhs, [&] { return detail::partition_label(blocks); });
  };

  if (bell_number(m, partition_budget) <= partition_budget) {
    for_each_set_partition(m, check_partition);
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < partition_budget; ++s) check_partition(random_set_partition(m, rng));
    tracker.set_seed(seed);
  }
  return std::move(tracker).finish(tol);
}

}  // namespace fairins

#endif  // FAIRINS_STATE_PAYOFFS_HPP
