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
 * \file fairins/valuation.hpp
 *
 * \brief The comonotonic coherent valuation generated by a concave
 *  distortion, its scenario set and its subgradients.
 *
 * For a distortion w the valuation is the Choquet integral
 *
 *   P(xi) = sum_j (w(F_j) - w(F_{j-1})) xi_(j),
 *
 * where xi_(1) >= xi_(2) >= ... are the sorted outcome values and F_j the
 * probability of the j largest outcomes. Its scenario set is
 * { Q : Q(A) <= w(P(A)) for every event A } and P(xi) = max_{Q in S} E_Q[xi].
 */

#ifndef FAIRINS_VALUATION_HPP
#define FAIRINS_VALUATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fairins/certificate.hpp"
#include "fairins/distortion.hpp"
#include "fairins/prob_space.hpp"

namespace fairins {

namespace detail {

/// Outcomes sharing one value of xi, listed in decreasing value order.
struct TieBlock {
  double value;
  double mass;
  std::vector<std::size_t> members;
};

// Within a block, members are ordered by (probability, index) and the block
// mass is summed in that order, so that permuting tied outcomes together
// with their probabilities leaves every floating-point result unchanged.
inline std::vector<TieBlock> descending_blocks(const FiniteProbSpace& space,
                                               const RandomVariable& xi) {
  space.require_compatible(xi);
  std::vector<std::size_t> order(xi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (xi[a] != xi[b]) return xi[a] > xi[b];
    if (space.probability(a) != space.probability(b)) {
      return space.probability(a) < space.probability(b);
    }
    return a < b;
  });
  std::vector<TieBlock> blocks;
  for (std::size_t j : order) {
    if (blocks.empty() || blocks.back().value != xi[j]) {
      blocks.push_back({xi[j], 0.0, {}});
    }
    blocks.back().mass += space.probability(j);
    blocks.back().members.push_back(j);
  }
  return blocks;
}

/// Mass increments w(F_j) - w(F_{j-1}) per block; the last cumulative
/// probability is pinned to 1.
inline std::vector<double> block_increments(const std::vector<TieBlock>& blocks,
                                            const Distortion& w) {
  std::vector<double> inc(blocks.size());
  double cum = 0.0;
  double w_prev = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    cum += blocks[b].mass;
    const double w_next = (b + 1 == blocks.size()) ? 1.0 : w(cum);
    inc[b] = w_next - w_prev;
    w_prev = w_next;
  }
  return inc;
}

}  // namespace detail

/// Distortion-based coherent valuation of a (signed) random variable.
inline double choquet_value(const FiniteProbSpace& space, const Distortion& w,
                            const RandomVariable& xi) {
  const auto blocks = detail::descending_blocks(space, xi);
  const auto inc = detail::block_increments(blocks, w);
  double value = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) value += inc[b] * blocks[b].value;
  return value;
}

/// Canonical element Q* of the subgradient set: the distortion increments
/// along the decreasing rearrangement of xi, with each tied block split
/// proportionally to the outcome probabilities.
inline ScenarioMeasure subgradient_element(const FiniteProbSpace& space, const Distortion& w,
                                           const RandomVariable& xi) {
  const auto blocks = detail::descending_blocks(space, xi);
  const auto inc = detail::block_increments(blocks, w);
  std::vector<double> q(xi.size(), 0.0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t j : blocks[b].members) {
      q[j] = space.probability(j) / blocks[b].mass * inc[b];
    }
  }
  return ScenarioMeasure(std::move(q));
}

/// Checks Q(A) <= w(P(A)) + tol over all 2^M events.
inline Certificate scenario_membership(const FiniteProbSpace& space, const Distortion& w,
                                       const ScenarioMeasure& q,
                                       const EnumerationLimits& limits = {},
                                       double tol = kDefaultTolerance) {
  const std::size_t m = space.size();
  detail::require_same_size(m, q.size());
  if (m > limits.max_outcomes) {
    throw ExhaustionLimitExceeded("scenario membership enumerates 2^" + std::to_string(m) +
                                  " events; limit is 2^" + std::to_string(limits.max_outcomes));
  }
  SlackTracker tracker("scenario_membership");
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double p = 0.0;
    double qa = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if ((mask >> j) & 1U) {
        p += space.probability(j);
        qa += q[j];
      }
    }
    tracker.observe(w(p) - qa, [&] { return Event::from_mask(m, mask).label(); });
  }
  return std::move(tracker).finish(tol);
}

/// xi is acceptable when P(xi) <= 0.
inline bool acceptability(const FiniteProbSpace& space, const Distortion& w,
                          const RandomVariable& xi, double tol = kDefaultTolerance) {
  return choquet_value(space, w, xi) <= tol;
}

/// Never strictly oppositely ordered on any pair of outcomes.
inline bool comonotone(const RandomVariable& xi, const RandomVariable& eta,
                       double tol = kDefaultTolerance) {
  detail::require_same_size(xi.size(), eta.size());
  for (std::size_t a = 0; a < xi.size(); ++a) {
    for (std::size_t b = a + 1; b < xi.size(); ++b) {
      if ((xi[a] - xi[b]) * (eta[a] - eta[b]) < -tol) return false;
    }
  }
  return true;
}

/// The canonical subgradient of xi also prices (xi-m)^+, -(xi-m)^- and
/// min(xi, m), all of which are comonotone with xi.
inline Certificate subgradient_persistence(const FiniteProbSpace& space, const Distortion& w,
                                           const RandomVariable& xi, double m,
                                           double tol = kDefaultTolerance) {
  const ScenarioMeasure q = subgradient_element(space, w, xi);
  SlackTracker tracker("subgradient_persistence");
  const RandomVariable shifted = xi - m;
  const RandomVariable upper = positive_part(shifted);
  const RandomVariable lower = -negative_part(shifted);
  const RandomVariable capped = min(xi, m);
  tracker.observe_equal(expectation(q, upper), choquet_value(space, w, upper),
                        [] { return "(xi-m)^+"; });
  tracker.observe_equal(expectation(q, lower), choquet_value(space, w, lower),
                        [] { return "-(xi-m)^-"; });
  tracker.observe_equal(expectation(q, capped), choquet_value(space, w, capped),
                        [] { return "min(xi,m)"; });
  return std::move(tracker).finish(tol);
}

}  // namespace fairins

#endif  // FAIRINS_VALUATION_HPP
