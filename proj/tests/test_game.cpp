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


#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fairins/contracts.hpp"
#include "fairins/game.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace fairins {
namespace {

const FiniteProbSpace kSpace({0.5, 0.3, 0.2});
const Distortion kSqrt = Distortion::power(0.5);

LiabilityVector reference_liabilities() {
  return LiabilityVector(kSpace, 1.0, {RandomVariable({0, 2, 2}), RandomVariable({0, 0, 3})});
}

const double kRoot = std::sqrt(0.5);
const double kRootFifth = std::sqrt(0.2);
// Fair premia: k0 and E_Q*[X_i] with Q* = (1 - w(.5), w(.5) - w(.2), w(.2)).
const std::vector<double> kFairPremia{1.0, 2.0 * kRoot, 3.0 * kRootFifth};

// --- coalitions --------------------------------------------------------------

TEST(Coalition, Labels) {
  EXPECT_EQ(Coalition::of(3, {1, 2}).label(), "{1,2}");
  EXPECT_EQ(Coalition(3, 0).label(), "{}");
  EXPECT_EQ(Coalition::grand(3).mask(), 7u);
  EXPECT_THROW(Coalition(65, 1), ExhaustionLimitExceeded);
}

TEST(CoalitionCost, Examples) {
  const auto x = reference_liabilities();
  EXPECT_NEAR(coalition_cost(kSpace, x, Coalition::of(3, {1, 2}), kSqrt), 2.7559, 1e-4);
  EXPECT_NEAR(coalition_cost(kSpace, x, Coalition::of(3, {1, 2}), kSqrt),
              2.0 * kRoot + 3.0 * kRootFifth, 1e-12);
  EXPECT_EQ(coalition_cost(kSpace, x, Coalition(3, 0), kSqrt), 0.0);
  EXPECT_NEAR(coalition_cost(kSpace, x, Coalition::of(3, {0}), kSqrt), 1.0, 1e-15);
}

TEST(CoalitionCost, MatchesLayerCakeOnEveryCoalition) {
  const auto x = reference_liabilities();
  const std::vector<double> p{0.5, 0.3, 0.2};
  auto w = [](double u) { return std::sqrt(u); };
  for (std::uint64_t mask = 1; mask < 8; ++mask) {
    std::vector<double> sum(3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      if (mask >> i & 1U) {
        for (std::size_t j = 0; j < 3; ++j) sum[j] += x.row(i)[j];
      }
    }
    EXPECT_NEAR(coalition_cost(kSpace, x, Coalition(3, mask), kSqrt), oracle::layer_cake(p, w, sum),
                1e-12);
  }
}

// --- core ----------------------------------------------------------------------

TEST(CoreCertificate, FairPremiaPass) {
  const auto x = reference_liabilities();
  const auto cert = core_certificate(kSpace, x, PremiumAllocation(kFairPremia), kSqrt);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.name, "core");
  EXPECT_EQ(cert.checked_count, 9u);
  EXPECT_NEAR(cert.worst_slack, 0.0, 1e-12);
  EXPECT_NEAR(kFairPremia[1], 1.41421, 1e-5);
  EXPECT_NEAR(kFairPremia[2], 1.34164, 1e-5);
  // The singleton {1} is tight: c({1}) = 2 w(0.5) = pi_1.
  EXPECT_NEAR(coalition_cost(kSpace, x, Coalition::of(3, {1}), kSqrt) - kFairPremia[1], 0.0, 1e-15);
}

TEST(CoreCertificate, PremiumBumpFailsAtAgentOne) {
  const auto x = reference_liabilities();
  auto bumped = kFairPremia;
  bumped[1] += 0.1;
  bumped[2] -= 0.1;
  const auto cert = core_certificate(kSpace, x, PremiumAllocation(bumped), kSqrt);
  EXPECT_FALSE(cert.passed);
  EXPECT_EQ(cert.worst_label, "{1}");
  EXPECT_NEAR(cert.worst_slack, -0.1, 1e-12);
}

TEST(CoreCertificate, OverchargedTotalFailsTheGrandEquality) {
  const auto x = reference_liabilities();
  auto over = kFairPremia;
  over[0] -= 0.01;
  const auto cert = core_certificate(kSpace, x, PremiumAllocation(over), kSqrt);
  EXPECT_FALSE(cert.passed);
  EXPECT_EQ(cert.worst_label, "sum=c{0,1,2}");
  EXPECT_NEAR(cert.worst_slack, -0.01, 1e-12);
}

TEST(CoreCertificate, InsurerOnly) {
  const LiabilityVector x(kSpace, 2.5, {});
  EXPECT_TRUE(core_certificate(kSpace, x, PremiumAllocation({2.5}), kSqrt).passed);
}

TEST(CoreCertificate, ShapeAndCaps) {
  const auto x = reference_liabilities();
  EXPECT_THROW(core_certificate(kSpace, x, PremiumAllocation({1.0, 1.0}), kSqrt), DimensionMismatch);
  EnumerationLimits limits;
  limits.max_players = 2;
  EXPECT_THROW(core_certificate(kSpace, x, PremiumAllocation(kFairPremia), kSqrt, limits),
               ExhaustionLimitExceeded);
}

TEST(CoreCertificate, IdentityDistortionExpectedLosses) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = gen::portfolio(rng, 6, 4, {0.0, 1.0, 3.0});
    std::vector<double> premia;
    for (const auto& row : c.x.rows()) premia.push_back(expectation(c.space, row));
    const auto cert = core_certificate(c.space, c.x, PremiumAllocation(premia), Distortion::identity());
    EXPECT_TRUE(cert.passed);
    EXPECT_NEAR(cert.worst_slack, 0.0, 1e-9);
  }
}

TEST(CoreCertificate, FairPremiaPassOnRandomPortfolios) {
  gen::Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = gen::uniform_size(rng, 2, 8);
    const std::size_t n = gen::uniform_size(rng, 1, 5);
    const auto space = gen::space(rng, m);
    std::vector<RandomVariable> losses;
    for (std::size_t i = 0; i < n; ++i) losses.push_back(gen::integer_vector(rng, m, 0, 10));
    const LiabilityVector x(space, 1.0, std::move(losses));
    const auto w = gen::concave_piecewise_linear(rng);
    const auto q = subgradient_element(space, w, x.total_loss());
    const auto cert = core_certificate(space, x, fair_premia(space, x, q, w), w);
    EXPECT_TRUE(cert.passed) << cert.worst_label << " " << cert.worst_slack;
  }
}

// --- state game ------------------------------------------------------------------

const RandomVariable kExposure({1.0, 3.0, 6.0});

TEST(EventCost, Examples) {
  EXPECT_NEAR(event_cost(kSpace, kExposure, Event::full(3), kSqrt),
              choquet_value(kSpace, kSqrt, kExposure), 1e-15);
  EXPECT_EQ(event_cost(kSpace, kExposure, Event::empty(3), kSqrt), 0.0);
  EXPECT_NEAR(event_cost(kSpace, kExposure, Event::from_mask(3, 0b100), kSqrt), 6.0 * kRootFifth,
              1e-12);
  EXPECT_NEAR(event_cost(kSpace, kExposure, Event::from_mask(3, 0b100), kSqrt), 2.68328, 1e-4);
  EXPECT_THROW(event_cost(kSpace, RandomVariable({1, -1, 0}), Event::full(3), kSqrt),
               NegativeLiability);
}

TEST(EventCost, Superadditive) {
  gen::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = gen::uniform_size(rng, 1, 7);
    const auto space = gen::space(rng, m);
    const auto w = gen::catalog_distortion(rng);
    const auto z = gen::real_vector(rng, m, 0, 10);
    const Event a = Event::from_mask(m, rng() & ((std::uint64_t{1} << m) - 1));
    EXPECT_GE(event_cost(space, z, a, w) + event_cost(space, z, a.complement(), w) + 1e-9,
              event_cost(space, z, Event::full(m), w));
  }
}

TEST(TwoAlternating, ReferenceExposure) {
  const auto cert = two_alternating_certificate(kSpace, kExposure, kSqrt);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.checked_count, 64u);
  EXPECT_FALSE(cert.seed.has_value());
}

TEST(TwoAlternating, NestedPairsAreEqualities) {
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      if ((a & b) != a) continue;
      const auto ea = Event::from_mask(3, a);
      const auto eb = Event::from_mask(3, b);
      const double slack = event_cost(kSpace, kExposure, ea, kSqrt) +
                           event_cost(kSpace, kExposure, eb, kSqrt) -
                           event_cost(kSpace, kExposure, Event::from_mask(3, a & b), kSqrt) -
                           event_cost(kSpace, kExposure, Event::from_mask(3, a | b), kSqrt);
      EXPECT_NEAR(slack, 0.0, 1e-12);
    }
  }
}

TEST(TwoAlternating, RandomExposures) {
  gen::Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = gen::uniform_size(rng, 1, 6);
    const auto space = gen::space(rng, m);
    const auto w = gen::catalog_distortion(rng);
    const auto z = gen::integer_vector(rng, m, 0, 10);
    EXPECT_TRUE(two_alternating_certificate(space, z, w).passed);
  }
}

TEST(TwoAlternating, SampledBeyondCapIsSeeded) {
  EnumerationLimits limits;
  limits.max_pair_checks = 16;
  const auto first = two_alternating_certificate(kSpace, kExposure, kSqrt, limits, 9);
  const auto second = two_alternating_certificate(kSpace, kExposure, kSqrt, limits, 9);
  EXPECT_TRUE(first.passed);
  EXPECT_EQ(first.checked_count, 16u);
  ASSERT_TRUE(first.seed.has_value());
  EXPECT_EQ(*first.seed, 9u);
  EXPECT_EQ(first.worst_label, second.worst_label);
  EXPECT_EQ(first.worst_slack, second.worst_slack);
}

TEST(FuzzyCore, PricingAllocationPasses) {
  const auto q = subgradient_element(kSpace, kSqrt, kExposure);
  std::vector<double> nu(3);
  for (std::size_t j = 0; j < 3; ++j) nu[j] = kExposure[j] * q[j];
  const auto cert = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 10000, 42, q);
  EXPECT_TRUE(cert.passed) << cert.worst_label << " " << cert.worst_slack;
  EXPECT_EQ(cert.checked_count, 1u + 8u + 10000u + 2u + 3u);
  ASSERT_TRUE(cert.seed.has_value());
  EXPECT_EQ(*cert.seed, 42u);
}

TEST(FuzzyCore, FullParticipationIsAnEquality) {
  const auto q = subgradient_element(kSpace, kSqrt, kExposure);
  std::vector<double> nu(3);
  double total = 0.0;
  for (std::size_t j = 0; j < 3; ++j) total += nu[j] = kExposure[j] * q[j];
  EXPECT_NEAR(total, choquet_value(kSpace, kSqrt, kExposure), 1e-12);
}

TEST(FuzzyCore, PointMassOnLargestExposureFails) {
  const double k = choquet_value(kSpace, kSqrt, kExposure);
  const std::vector<double> nu{0.0, 0.0, k};
  const auto cert = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 1000, 42);
  EXPECT_FALSE(cert.passed);
  EXPECT_EQ(cert.worst_label, "lambda=1{w2}");
  EXPECT_NEAR(cert.worst_slack, 6.0 * kRootFifth - k, 1e-12);
}

TEST(FuzzyCore, WrongTotalFails) {
  const std::vector<double> nu{0.1, 0.1, 0.1};
  const auto cert = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 10, 1);
  EXPECT_FALSE(cert.passed);
}

TEST(FuzzyCore, ConstructiveCheckRejectsMeasureOutsideScenarioSet) {
  // nu matches Z * Q but Q = point mass is not a scenario measure.
  const ScenarioMeasure q({0.0, 0.0, 1.0});
  const std::vector<double> nu{0.0, 0.0, 6.0};
  const auto cert = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 0, 1, q);
  EXPECT_FALSE(cert.passed);
}

TEST(FuzzyCore, RandomPricingAllocationsPass) {
  gen::Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = gen::uniform_size(rng, 1, 6);
    const auto space = gen::space(rng, m);
    const auto w = gen::catalog_distortion(rng);
    const auto z = gen::real_vector(rng, m, 0, 10);
    const auto q = subgradient_element(space, w, z);
    std::vector<double> nu(m);
    for (std::size_t j = 0; j < m; ++j) nu[j] = z[j] * q[j];
    const auto cert = fuzzy_core_certificate(space, z, nu, w, 500, trial, q);
    EXPECT_TRUE(cert.passed) << cert.worst_label << " " << cert.worst_slack;
  }
}

TEST(FuzzyCore, SamplesAreReproducible) {
  const double k = choquet_value(kSpace, kSqrt, kExposure);
  const std::vector<double> nu{k / 3, k / 3, k / 3};
  const auto a = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 200, 5);
  const auto b = fuzzy_core_certificate(kSpace, kExposure, nu, kSqrt, 200, 5);
  EXPECT_EQ(a.worst_label, b.worst_label);
  EXPECT_EQ(a.worst_slack, b.worst_slack);
}

// --- preferences -------------------------------------------------------------------

TEST(PreferenceCompare, Examples) {
  const auto x = reference_liabilities();
  const Coalition s = Coalition::of(3, {1, 2});
  const std::vector<RandomVariable> xi{RandomVariable({1, 1, 0}), RandomVariable({0.5, 2, 1}),
                                       RandomVariable({0.5, 0, 3})};
  // Same coalition total, redistributed between members.
  const std::vector<RandomVariable> shuffled{RandomVariable({1, 1, 0}), RandomVariable({0, 1, 2}),
                                             RandomVariable({1, 1, 2})};
  EXPECT_EQ(preference_compare(kSpace, x, s, xi, shuffled, kSqrt), Preference::indifferent);
  EXPECT_EQ(preference_compare(kSpace, x, s, xi, xi, kSqrt), Preference::indifferent);

  auto less = xi;
  less[1] = xi[1] - 1.0;
  EXPECT_EQ(preference_compare(kSpace, x, s, xi, less, kSqrt), Preference::prefers_xi);
  EXPECT_EQ(preference_compare(kSpace, x, s, less, xi, kSqrt), Preference::prefers_eta);
  // A change outside the coalition does not matter.
  auto outside = xi;
  outside[0] = xi[0] - 1.0;
  EXPECT_EQ(preference_compare(kSpace, x, s, xi, outside, kSqrt), Preference::indifferent);
  EXPECT_STREQ(to_string(Preference::prefers_xi), "prefers_xi");
}

}  // namespace
}  // namespace fairins
