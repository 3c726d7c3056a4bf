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

#ifndef FAIRINS_ENUMERATION_HPP
#define FAIRINS_ENUMERATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "fairins/prob_space.hpp"

namespace fairins {

/// Bell number B(n), saturating at `cap` (returns cap + 1 once exceeded).
inline std::uint64_t bell_number(std::size_t n, std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() - 1) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) {
      const std::uint64_t s = next.back() + v;
      next.push_back(s > cap || s < v ? cap + 1 : s);
    }
    row = std::move(next);
  }
  return row.front();
}

/// Calls `f(blocks)` for every set partition of {0..n-1}; `blocks[j]` is the
/// block index of element j (restricted growth string, blocks numbered from 0).
template <typename F>
void for_each_set_partition(std::size_t n, F&& f) {
  if (n == 0) return;
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> maxima(n, 0);  // maxima[j] = max(a[0..j-1])
  while (true) {
    f(a);
    // Increment the restricted growth string from the right.
    std::size_t j = n - 1;
    while (j > 0 && a[j] == maxima[j] + 1) --j;
    if (j == 0) return;
    ++a[j];
    for (std::size_t k = j + 1; k < n; ++k) {
      a[k] = 0;
      maxima[k] = std::max(maxima[k - 1], a[k - 1]);
    }
  }
}

/// Random set partition of {0..n-1}: each element drawn into one of n labels
/// uniformly, labels then renumbered in order of first appearance.
inline std::vector<std::size_t> random_set_partition(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> raw(n);
  for (auto& r : raw) r = pick(rng);
  std::vector<std::size_t> relabel(n, n);
  std::size_t next = 0;
  std::vector<std::size_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (relabel[raw[j]] == n) relabel[raw[j]] = next++;
    out[j] = relabel[raw[j]];
  }
  return out;
}

/// Blocks of a partition given as a block-index vector.
inline std::vector<Event> partition_blocks(const std::vector<std::size_t>& labels) {
  std::size_t count = 0;
  for (std::size_t l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<bool>> members(count, std::vector<bool>(labels.size(), false));
  for (std::size_t j = 0; j < labels.size(); ++j) members[labels[j]][j] = true;
  std::vector<Event> out;
  out.reserve(count);
  for (auto& m : members) out.emplace_back(std::move(m));
  return out;
}

/// Fuzzy coalition sampler: even draws are uniform on [0,1]^M, odd draws are
/// i.i.d. beta(1/2, 1/2) (arcsine law, sin^2(pi U / 2)), which puts more
/// weight near the faces of the cube.
class FuzzyCoalitionSampler {
 public:
  FuzzyCoalitionSampler(std::size_t outcomes, std::uint64_t seed) : outcomes_(outcomes), rng_(seed) {}

  RandomVariable next() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> lambda(outcomes_);
    const bool arcsine = (draws_++ % 2) == 1;
    for (auto& l : lambda) {
      const double u = unit(rng_);
      if (arcsine) {
        const double s = std::sin(std::numbers::pi * u / 2.0);
        l = s * s;
      } else {
        l = u;
      }
    }
    return RandomVariable(std::move(lambda));
  }

 private:
  std::size_t outcomes_;
  std::mt19937_64 rng_;
  std::uint64_t draws_ = 0;
};

}  // namespace fairins

#endif  // FAIRINS_ENUMERATION_HPP
