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

#include <cstdint>
#include <string>

#include "plt/error.hpp"

namespace plt {

/// A residue modulo the field characteristic, always kept in [0, p).
using Residue = std::uint64_t;

/// Arithmetic in the prime field F_p.
///
/// The modulus is bounded by 2^31 so that a product of two residues fits in
/// 64 bits before reduction. Primality is checked by trial division when the
/// field is constructed.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= kMaxModulus) {
      throw Error(ErrorCode::kNotPrime, "modulus " + std::to_string(p) + " outside [2, 2^31)");
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is divisible by " + std::to_string(d));
      }
    }
  }

  std::uint64_t modulus() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(p_);
    const std::int64_t r = v % p;
    return static_cast<Residue>(r < 0 ? r + p : r);
  }
  Residue reduce(std::uint64_t v) const noexcept { return v % p_; }

  Residue add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }

  Residue pow(Residue base, std::uint64_t exp) const noexcept {
    Residue result = 1 % p_;
    base %= p_;
    while (exp != 0) {
      if (exp & 1U) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1U;
    }
    return result;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  Residue inv(Residue a) const {
    a %= p_;
    if (a == 0) throw Error(ErrorCode::kInversionOfZero, "zero has no inverse mod " + std::to_string(p_));
    std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(a);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      std::int64_t tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
    }
    return reduce(s0);
  }

  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

inline Residue field_inv(Residue a, const PrimeField& field) { return field.inv(a); }

}  // namespace plt
