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

#ifndef FAIRINS_LIABILITY_HPP
#define FAIRINS_LIABILITY_HPP

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairins/errors.hpp"
#include "fairins/prob_space.hpp"

namespace fairins {

/// Liability vector (X_0, X_1, ..., X_N): the insurer's equity k0 as the
/// constant row 0, followed by the agents' nonnegative losses.
class LiabilityVector {
 public:
  LiabilityVector(const FiniteProbSpace& space, double k0, std::vector<RandomVariable> losses) {
    if (!std::isfinite(k0) || k0 < 0.0) {
      throw ValidationError("k0", "equity must be a nonnegative number");
    }
    rows_.reserve(losses.size() + 1);
    rows_.push_back(RandomVariable::constant(space.size(), k0));
    for (std::size_t i = 0; i < losses.size(); ++i) {
      const std::string field = "agents[" + std::to_string(i) + "].losses";
      if (losses[i].size() != space.size()) {
        throw ValidationError(field, "expected " + std::to_string(space.size()) + " values, got " +
                                         std::to_string(losses[i].size()));
      }
      if (losses[i].min() < 0.0) throw ValidationError(field, "losses must be nonnegative");
      rows_.push_back(std::move(losses[i]));
    }
    k0_ = k0;
  }

  double k0() const noexcept { return k0_; }
  /// Number of insured agents N.
  std::size_t agents() const noexcept { return rows_.size() - 1; }
  /// Number of players N + 1 (the insurer is player 0).
  std::size_t players() const noexcept { return rows_.size(); }
  std::size_t outcomes() const noexcept { return rows_.front().size(); }

  const RandomVariable& row(std::size_t i) const { return rows_[i]; }
  std::span<const RandomVariable> rows() const noexcept { return rows_; }

  /// S^X = sum_{i >= 1} X_i.
  RandomVariable total_loss() const {
    RandomVariable s = RandomVariable::constant(outcomes(), 0.0);
    for (std::size_t i = 1; i < rows_.size(); ++i) s = s + rows_[i];
    return s;
  }

 private:
  double k0_ = 0.0;
  std::vector<RandomVariable> rows_;
};

/// Premium vector (pi_0, ..., pi_N). Only shape and sign are enforced here;
/// pi_0 = k0 and sum = K are what the core certificate checks.
class PremiumAllocation {
 public:
  explicit PremiumAllocation(std::vector<double> premia) : premia_(std::move(premia)) {
    for (double p : premia_) {
      if (!std::isfinite(p) || p < 0.0) throw ValidationError("premia", "premia must be nonnegative");
    }
  }

  std::size_t size() const noexcept { return premia_.size(); }
  double operator[](std::size_t i) const { return premia_[i]; }
  std::span<const double> values() const noexcept { return premia_; }
  double total() const { return std::accumulate(premia_.begin(), premia_.end(), 0.0); }

 private:
  std::vector<double> premia_;
};

/// Payoffs Y_0..Y_N, one row per player.
class PayoffMatrix {
 public:
  explicit PayoffMatrix(std::vector<RandomVariable> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw DimensionMismatch("payoff matrix needs at least one row");
    for (const auto& r : rows_) {
      if (r.size() != rows_.front().size()) {
        throw DimensionMismatch("payoff rows must all have the same number of outcomes");
      }
    }
  }

  std::size_t players() const noexcept { return rows_.size(); }
  std::size_t outcomes() const noexcept { return rows_.front().size(); }
  const RandomVariable& row(std::size_t i) const { return rows_[i]; }
  std::span<const RandomVariable> rows() const noexcept { return rows_; }

  double column_sum(std::size_t j) const {
    double s = 0.0;
    for (const auto& r : rows_) s += r[j];
    return s;
  }

 private:
  std::vector<RandomVariable> rows_;
};

/// Constant surplus shares (alpha_0, ..., alpha_N): nonnegative, summing to 1.
class BenefitShares {
 public:
  explicit BenefitShares(std::vector<double> alpha, double tol = 1e-9) : alpha_(std::move(alpha)) {
    double total = 0.0;
    for (double a : alpha_) {
      if (!std::isfinite(a) || a < 0.0) throw ValidationError("alpha", "shares must be nonnegative");
      total += a;
    }
    if (std::abs(total - 1.0) > tol) {
      throw ValidationError("alpha", "shares sum to " + std::to_string(total) + ", expected 1");
    }
  }

  std::size_t size() const noexcept { return alpha_.size(); }
  double operator[](std::size_t i) const { return alpha_[i]; }
  std::span<const double> values() const noexcept { return alpha_; }

 private:
  std::vector<double> alpha_;
};

}  // namespace fairins

#endif  // FAIRINS_LIABILITY_HPP
