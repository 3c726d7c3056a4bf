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
 * \file fairins/prob_space.hpp
 *
 * \brief Finite probability spaces, random variables, events and
 *  probability measures on the power set of the outcomes.
 *
 * Every random quantity in the library is an outcome-indexed vector. The
 * sigma-algebra is always the full power set; coarser sigma-algebras only
 * appear as partitions generated by a tuple of random variables (see
 * sigma_measurable()).
 */

#ifndef FAIRINS_PROB_SPACE_HPP
#define FAIRINS_PROB_SPACE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairins/errors.hpp"

namespace fairins {

inline constexpr double kMassTolerance = 1e-12;
inline constexpr double kMeasureTolerance = 1e-10;
inline constexpr double kCellTolerance = 1e-12;

/// A real value per outcome. Values must be finite.
class RandomVariable {
 public:
  RandomVariable() = default;

  explicit RandomVariable(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw DomainError("random variable values must be finite");
      }
    }
  }

  RandomVariable(std::initializer_list<double> values)
      : RandomVariable(std::vector<double>(values)) {}

  static RandomVariable constant(std::size_t size, double c) {
    return RandomVariable(std::vector<double>(size, c));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const& noexcept { return values_; }
  std::span<const double> values() const&& = delete;  // would dangle

  double min() const { return *std::min_element(values_.begin(), values_.end()); }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  /// Applies `f` pointwise.
  template <typename F>
  RandomVariable map(F&& f) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), f);
    return RandomVariable(std::move(out));
  }

  friend bool operator==(const RandomVariable&, const RandomVariable&) = default;

 private:
  std::vector<double> values_;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw SpaceMismatch("random quantities live on spaces of different size (" +
                        std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

template <typename Op>
RandomVariable zip(const RandomVariable& a, const RandomVariable& b, Op op) {
  require_same_size(a.size(), b.size());
  std::vector<double> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = op(a[j], b[j]);
  return RandomVariable(std::move(out));
}

}  // namespace detail

inline RandomVariable operator+(const RandomVariable& a, const RandomVariable& b) {
  return detail::zip(a, b, std::plus<>{});
}
inline RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) {
  return detail::zip(a, b, std::minus<>{});
}
/// Pointwise product.
inline RandomVariable operator*(const RandomVariable& a, const RandomVariable& b) {
  return detail::zip(a, b, std::multiplies<>{});
}
inline RandomVariable operator-(const RandomVariable& a) {
  return a.map([](double v) { return -v; });
}
inline RandomVariable operator+(const RandomVariable& a, double c) {
  return a.map([c](double v) { return v + c; });
}
inline RandomVariable operator-(const RandomVariable& a, double c) {
  return a.map([c](double v) { return v - c; });
}
inline RandomVariable operator*(double c, const RandomVariable& a) {
  return a.map([c](double v) { return c * v; });
}
inline RandomVariable operator*(const RandomVariable& a, double c) { return c * a; }

/// x^+ = max(x, 0).
inline RandomVariable positive_part(const RandomVariable& a) {
  return a.map([](double v) { return std::max(v, 0.0); });
}
/// x^- = max(-x, 0), so that x = x^+ - x^-.
inline RandomVariable negative_part(const RandomVariable& a) {
  return a.map([](double v) { return std::max(-v, 0.0); });
}
inline RandomVariable min(const RandomVariable& a, double m) {
  return a.map([m](double v) { return std::min(v, m); });
}

/// Subset of outcomes.
class Event {
 public:
  Event() = default;
  explicit Event(std::vector<bool> members) : members_(std::move(members)) {}

  static Event from_mask(std::size_t size, std::uint64_t mask) {
    std::vector<bool> members(size);
    for (std::size_t j = 0; j < size; ++j) members[j] = (mask >> j) & 1U;
    return Event(std::move(members));
  }
  static Event full(std::size_t size) { return Event(std::vector<bool>(size, true)); }
  static Event empty(std::size_t size) { return Event(std::vector<bool>(size, false)); }

  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t j) const { return members_[j]; }
  bool is_empty() const { return std::none_of(members_.begin(), members_.end(), [](bool b) { return b; }); }

  Event complement() const {
    std::vector<bool> out(members_.size());
    for (std::size_t j = 0; j < members_.size(); ++j) out[j] = !members_[j];
    return Event(std::move(out));
  }

  RandomVariable indicator() const {
    std::vector<double> out(members_.size());
    for (std::size_t j = 0; j < members_.size(); ++j) out[j] = members_[j] ? 1.0 : 0.0;
    return RandomVariable(std::move(out));
  }

  std::vector<std::size_t> outcomes() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < members_.size(); ++j) {
      if (members_[j]) out.push_back(j);
    }
    return out;
  }

  /// Label such as "{w0,w2}" (zero-based outcome indices).
  std::string label() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t j : outcomes()) {
      if (!first) s += ",";
      s += "w" + std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const Event&, const Event&) = default;

 private:
  std::vector<bool> members_;
};

/// Random variable times the indicator of an event.
inline RandomVariable restrict_to(const RandomVariable& xi, const Event& a) {
  detail::require_same_size(xi.size(), a.size());
  std::vector<double> out(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) out[j] = a.contains(j) ? xi[j] : 0.0;
  return RandomVariable(std::move(out));
}

/// Outcomes with strictly positive probabilities summing to one.
class FiniteProbSpace {
 public:
  explicit FiniteProbSpace(std::vector<double> probabilities)
      : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty()) {
      throw ProbabilityMassMismatch("probability space needs at least one outcome");
    }
    for (std::size_t j = 0; j < probabilities_.size(); ++j) {
      const double p = probabilities_[j];
      if (!std::isfinite(p) || p <= 0.0) {
        throw NonPositiveProbability("probability of outcome " + std::to_string(j) +
                                     " is not strictly positive");
      }
    }
    const double total = std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw ProbabilityMassMismatch("probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
    }
  }

  std::size_t size() const noexcept { return probabilities_.size(); }
  double probability(std::size_t j) const { return probabilities_[j]; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }

  double probability(const Event& a) const {
    detail::require_same_size(size(), a.size());
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) {
      if (a.contains(j)) s += probabilities_[j];
    }
    return s;
  }

  void require_compatible(const RandomVariable& xi) const {
    detail::require_same_size(size(), xi.size());
  }

 private:
  std::vector<double> probabilities_;
};

inline FiniteProbSpace build_space(std::vector<double> probabilities) {
  return FiniteProbSpace(std::move(probabilities));
}

/// Probability vector on the outcomes; absolutely continuous with respect to
/// the reference measure automatically, since the latter has full support.
class ScenarioMeasure {
 public:
  explicit ScenarioMeasure(std::vector<double> masses) : masses_(std::move(masses)) {
    double total = 0.0;
    for (double q : masses_) {
      if (!std::isfinite(q) || q < 0.0) throw InvalidMeasure("measure masses must be nonnegative");
      total += q;
    }
    if (std::abs(total - 1.0) > kMeasureTolerance) {
      throw InvalidMeasure("measure masses sum to " + std::to_string(total) + ", expected 1");
    }
  }
  ScenarioMeasure(std::initializer_list<double> masses)
      : ScenarioMeasure(std::vector<double>(masses)) {}

  static ScenarioMeasure reference(const FiniteProbSpace& space) {
    return ScenarioMeasure(std::vector<double>(space.probabilities().begin(),
                                               space.probabilities().end()));
  }

  std::size_t size() const noexcept { return masses_.size(); }
  double operator[](std::size_t j) const { return masses_[j]; }
  std::span<const double> masses() const noexcept { return masses_; }

  double measure(const Event& a) const {
    detail::require_same_size(size(), a.size());
    double s = 0.0;
    for (std::size_t j = 0; j < size(); ++j) {
      if (a.contains(j)) s += masses_[j];
    }
    return s;
  }

 private:
  std::vector<double> masses_;
};

/// E_Q[xi] = sum_j q_j xi_j.
inline double expectation(const ScenarioMeasure& q, const RandomVariable& xi) {
  detail::require_same_size(q.size(), xi.size());
  double s = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) s += q[j] * xi[j];
  return s;
}

/// E_P[xi] under the reference measure of the space.
inline double expectation(const FiniteProbSpace& space, const RandomVariable& xi) {
  space.require_compatible(xi);
  double s = 0.0;
  for (std::size_t j = 0; j < xi.size(); ++j) s += space.probability(j) * xi[j];
  return s;
}

/// Largest spread of `xi` inside a cell of the partition generated by
/// `generators`. Two outcomes share a cell when every generator agrees on
/// them within `cell_tol`. Zero means `xi` is measurable.
inline double measurability_defect(const RandomVariable& xi,
                                   std::span<const RandomVariable> generators,
                                   double cell_tol = kCellTolerance) {
  for (const auto& g : generators) detail::require_same_size(xi.size(), g.size());
  double defect = 0.0;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    for (std::size_t b = a + 1; b < xi.size(); ++b) {
      const bool same_cell = std::all_of(generators.begin(), generators.end(), [&](const auto& g) {
        return std::abs(g[a] - g[b]) <= cell_tol;
      });
      if (same_cell) defect = std::max(defect, std::abs(xi[a] - xi[b]));
    }
  }
  return defect;
}

/// True iff `xi` is constant on every cell of the partition generated by the
/// tuple of `generators`.
inline bool sigma_measurable(const RandomVariable& xi, std::span<const RandomVariable> generators,
                             double cell_tol = kCellTolerance) {
  return measurability_defect(xi, generators, cell_tol) <= cell_tol;
}

inline bool sigma_measurable(const RandomVariable& xi,
                             std::initializer_list<RandomVariable> generators,
                             double cell_tol = kCellTolerance) {
  const std::vector<RandomVariable> g(generators);
  return sigma_measurable(xi, std::span<const RandomVariable>(g), cell_tol);
}

}  // namespace fairins

#endif  // FAIRINS_PROB_SPACE_HPP
