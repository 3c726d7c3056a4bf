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
 * \file fairins/distortion.hpp
 *
 * \brief Concave distortion functions w : [0,1] -> [0,1], w(0) = 0, w(1) = 1.
 *
 * The catalog is closed: identity, power u^gamma, expected shortfall
 * min(u / (1 - beta), 1) and concave piecewise-linear interpolation. Adding a
 * kind means adding an alternative to Distortion::Kind plus its JSON tag.
 */

#ifndef FAIRINS_DISTORTION_HPP
#define FAIRINS_DISTORTION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairins/errors.hpp"

namespace fairins {

struct IdentityDistortion {
  double operator()(double u) const noexcept { return u; }
};

struct PowerDistortion {
  double gamma = 1.0;
  double operator()(double u) const { return std::pow(u, gamma); }
};

struct ExpectedShortfallDistortion {
  double beta = 0.0;
  double operator()(double u) const noexcept { return std::min(u / (1.0 - beta), 1.0); }
};

struct Knot {
  double u;
  double w;
};

struct PiecewiseLinearDistortion {
  std::vector<Knot> knots;

  double operator()(double u) const noexcept {
    auto it = std::upper_bound(knots.begin(), knots.end(), u,
                               [](double x, const Knot& k) { return x < k.u; });
    if (it == knots.begin()) return knots.front().w;
    if (it == knots.end()) return knots.back().w;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    return lo.w + (hi.w - lo.w) * (u - lo.u) / (hi.u - lo.u);
  }
};

class Distortion {
 public:
  using Kind = std::variant<IdentityDistortion, PowerDistortion, ExpectedShortfallDistortion,
                            PiecewiseLinearDistortion>;

  Distortion() : kind_(IdentityDistortion{}) {}

  static Distortion identity() { return Distortion(IdentityDistortion{}); }

  static Distortion power(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) {
      throw InvalidDistortion("power distortion needs gamma in (0,1], got " + std::to_string(gamma));
    }
    return Distortion(PowerDistortion{gamma});
  }

  static Distortion expected_shortfall(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) {
      throw InvalidDistortion("expected-shortfall distortion needs beta in [0,1), got " +
                              std::to_string(beta));
    }
    return Distortion(ExpectedShortfallDistortion{beta});
  }

  /// Knots must start at (0,0), end at (1,1), have strictly increasing u and
  /// nonincreasing, nonnegative slopes. Concavity is checked on the
  /// cross-multiplied slopes with a relative slack of 1e-12.
  static Distortion piecewise_linear(std::vector<Knot> knots) {
    if (knots.size() < 2) throw InvalidDistortion("piecewise-linear distortion needs >= 2 knots");
    if (knots.front().u != 0.0 || knots.front().w != 0.0) {
      throw InvalidDistortion("first knot must be (0,0)");
    }
    if (knots.back().u != 1.0 || knots.back().w != 1.0) {
      throw InvalidDistortion("last knot must be (1,1)");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      const double du = knots[i].u - knots[i - 1].u;
      const double dw = knots[i].w - knots[i - 1].w;
      if (!(du > 0.0)) throw InvalidDistortion("knot abscissae must be strictly increasing");
      if (dw < 0.0) throw InvalidDistortion("distortion must be nondecreasing");
      if (i >= 2) {
        const double du_prev = knots[i - 1].u - knots[i - 2].u;
        const double dw_prev = knots[i - 1].w - knots[i - 2].w;
        // slope_prev >= slope  <=>  dw_prev * du >= dw * du_prev
        const double lhs = dw_prev * du;
        const double rhs = dw * du_prev;
        if (lhs < rhs - 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1e-300})) {
          throw InvalidDistortion("distortion must be concave (slopes nonincreasing)");
        }
      }
    }
    return Distortion(PiecewiseLinearDistortion{std::move(knots)});
  }

  /// Evaluation without domain check; arguments are clamped to [0,1].
  double operator()(double u) const {
    u = std::clamp(u, 0.0, 1.0);
    if (u == 0.0) return 0.0;
    if (u == 1.0) return 1.0;
    return std::visit([u](const auto& k) { return k(u); }, kind_);
  }

  const Kind& kind() const noexcept { return kind_; }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, IdentityDistortion>) return "identity";
          else if constexpr (std::is_same_v<T, PowerDistortion>) return "power";
          else if constexpr (std::is_same_v<T, ExpectedShortfallDistortion>) return "expected_shortfall";
          else return "piecewise_linear";
        },
        kind_);
  }

 private:
  explicit Distortion(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

/// w(u) for u in [0,1]; DomainError otherwise.
inline double distortion_eval(const Distortion& w, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("distortion argument must lie in [0,1], got " + std::to_string(u));
  }
  return w(u);
}

// {"kind": "power"|"identity"|"expected_shortfall"|"piecewise_linear",
//  "gamma"?: number, "beta"?: number, "knots"?: [[u,w],...]}
template <typename Json>
void to_json(Json& j, const Distortion& w) {
  j = Json::object();
  j["kind"] = w.name();
  std::visit(
      [&j](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, PowerDistortion>) {
          j["gamma"] = k.gamma;
        } else if constexpr (std::is_same_v<T, ExpectedShortfallDistortion>) {
          j["beta"] = k.beta;
        } else if constexpr (std::is_same_v<T, PiecewiseLinearDistortion>) {
          Json knots = Json::array();
          for (const auto& kn : k.knots) knots.push_back(Json::array({kn.u, kn.w}));
          j["knots"] = std::move(knots);
        }
      },
      w.kind());
}

template <typename Json>
void from_json(const Json& j, Distortion& w) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ValidationError("distortion", "expected an object with a string \"kind\"");
  }
  const auto kind = j["kind"].template get<std::string>();
  auto number = [&j](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ValidationError(std::string("distortion.") + key, "missing or not a number");
    }
    return j[key].template get<double>();
  };
  try {
    if (kind == "identity") {
      w = Distortion::identity();
    } else if (kind == "power") {
      w = Distortion::power(number("gamma"));
    } else if (kind == "expected_shortfall") {
      w = Distortion::expected_shortfall(number("beta"));
    } else if (kind == "piecewise_linear") {
      if (!j.contains("knots") || !j["knots"].is_array()) {
        throw ValidationError("distortion.knots", "missing or not an array");
      }
      std::vector<Knot> knots;
      for (const auto& kn : j["knots"]) {
        if (!kn.is_array() || kn.size() != 2 || !kn[0].is_number() || !kn[1].is_number()) {
          throw ValidationError("distortion.knots", "each knot must be [u, w]");
        }
        knots.push_back({kn[0].template get<double>(), kn[1].template get<double>()});
      }
      w = Distortion::piecewise_linear(std::move(knots));
    } else {
      throw ValidationError("distortion.kind", "unknown distortion kind \"" + kind + "\"");
    }
  } catch (const InvalidDistortion& e) {
    throw ValidationError("distortion", e.what());
  }
}

}  // namespace fairins

#endif  // FAIRINS_DISTORTION_HPP
