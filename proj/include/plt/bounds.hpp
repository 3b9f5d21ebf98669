// Copyright 2026 The plt Authors.
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "plt/error.hpp"

namespace plt {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q.numerator() << '/' << q.denominator();
  return os.str();
}

struct CapacityBounds {
  std::int64_t k = 0;
  std::int64_t d = 0;
  std::int64_t l = 0;
  std::int64_t r = 0;  // K mod D
  std::int64_t s = 0;  // gcd(D + R, R), with gcd(x, 0) = x
  Rational lower;
  Rational upper;
  bool tight = false;
};

inline void validate_parameters(std::int64_t k, std::int64_t d, std::int64_t l) {
  if (!(1 <= l && l <= d && d <= k)) {
    throw Error(ErrorCode::kInvalidParameters, "need 1 <= L <= D <= K, got K=" + std::to_string(k) +
                                                   " D=" + std::to_string(d) + " L=" + std::to_string(l));
  }
}

/// Lower bound 1 / (floor(K/D) + min(R/S, R/L)) and upper bound
/// 1 / (floor(K/D) + min(1, R/L)) on the capacity, exactly.
inline CapacityBounds compute_bounds(std::int64_t k, std::int64_t d, std::int64_t l) {
  validate_parameters(k, d, l);
  CapacityBounds b;
  b.k = k;
  b.d = d;
  b.l = l;
  b.r = k % d;
  b.s = std::gcd(d + b.r, b.r);
  const Rational blocks(k / d);
  const Rational r_over_l(b.r, l);
  b.lower = 1 / (blocks + std::min(Rational(b.r, b.s), r_over_l));
  b.upper = 1 / (blocks + std::min(Rational(1), r_over_l));
  b.tight = b.lower == b.upper;
  return b;
}

/// Optimal value L * floor(K/D) + min(L, R) of the converse program.
inline std::int64_t closed_form_converse(std::int64_t k, std::int64_t d, std::int64_t l) {
  validate_parameters(k, d, l);
  return l * (k / d) + std::min(l, k % d);
}

struct IlpSolution {
  std::int64_t value = 0;
  std::vector<std::int64_t> counts;  // counts[j - 1] = T_j for j = 1..D
};

inline constexpr std::int64_t kIlpMaxK = 40;

/// Exhaustive minimization of sum_j T_j min(j, L) subject to
/// sum_j j T_j = K, T_D >= 1, T_j >= 0.
inline IlpSolution ilp_converse_oracle(std::int64_t k, std::int64_t d, std::int64_t l) {
  validate_parameters(k, d, l);
  if (k > kIlpMaxK) {
    throw Error(ErrorCode::kInstanceTooLarge, "exhaustive ILP limited to K <= " + std::to_string(kIlpMaxK));
  }
  IlpSolution best;
  best.value = -1;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 0);

  // Assign T_j for j = part, part-1, ..., 1; T_1 absorbs the remainder.
  auto search = [&](auto&& self, std::int64_t part, std::int64_t remaining, std::int64_t cost) -> void {
    const auto slot = static_cast<std::size_t>(part - 1);
    if (part == 1) {
      counts[slot] = remaining;
      const std::int64_t total = cost + remaining * std::min<std::int64_t>(1, l);
      if (best.value < 0 || total < best.value) {
        best.value = total;
        best.counts = counts;
      }
      counts[slot] = 0;
      return;
    }
    const std::int64_t weight = std::min(part, l);
    const std::int64_t lowest = part == d ? 1 : 0;
    for (std::int64_t t = lowest; t * part <= remaining; ++t) {
      counts[slot] = t;
      self(self, part - 1, remaining - t * part, cost + t * weight);
    }
    counts[slot] = 0;
  };

  if (d == 1) {
    best.value = k * std::min<std::int64_t>(1, l);
    best.counts = {k};
    return best;
  }
  search(search, d, k, 0);
  return best;
}

}  // namespace plt
