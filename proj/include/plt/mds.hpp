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
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/grs.hpp"
#include "plt/matrix.hpp"
#include "plt/random.hpp"

namespace plt {

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
/// Stops early when visit returns false; returns false in that case.
inline bool for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!visit(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// True iff every maximal square submatrix (rows x rows) is invertible.
/// Recognized GRS generators are accepted without enumeration; everything
/// else is checked exhaustively over all C(cols, rows) column choices.
inline bool is_mds(const FieldMatrix& m) {
  if (m.rows() > m.cols()) {
    throw Error(ErrorCode::kShapeError, "is_mds needs rows <= cols, got " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()));
  }
  if (m.rows() == 0) return true;
  if (recognize_grs(m)) return true;
  return for_each_combination(m.cols(), m.rows(), [&](std::span<const std::size_t> cols) {
    return determinant(m.select_columns(cols)) != 0;
  });
}

/// m x t matrix with entry (i, j) = (x_i - y_j)^{-1}. Points must be pairwise
/// distinct across x and y.
inline FieldMatrix cauchy_matrix(std::span<const Residue> x, std::span<const Residue> y, const PrimeField& f) {
  std::unordered_set<Residue> seen;
  for (auto v : x) {
    if (!seen.insert(f.reduce(v)).second) throw Error(ErrorCode::kDegeneratePoints, "repeated Cauchy point");
  }
  for (auto v : y) {
    if (!seen.insert(f.reduce(v)).second) throw Error(ErrorCode::kDegeneratePoints, "repeated Cauchy point");
  }
  FieldMatrix c(f, x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) c(i, j) = f.inv(f.sub(f.reduce(x[i]), f.reduce(y[j])));
  return c;
}

inline constexpr std::size_t kDefaultRejectionCap = 100'000;

/// Uniform invertible n x n matrix by rejection.
inline FieldMatrix random_invertible(std::size_t n, const PrimeField& f, Randomness& rnd,
                                     std::size_t max_attempts = kDefaultRejectionCap) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    FieldMatrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rnd.element(f);
    if (rank(m) == n) return m;
  }
  throw Error(ErrorCode::kSamplingExhausted, "no invertible matrix after " + std::to_string(max_attempts) + " draws");
}

/// Random rows x cols MDS matrix.
///
/// kGrs: column j is gamma_j (1, w_j, ..., w_j^{rows-1}) with distinct w_j and
/// nonzero gamma_j, mixed by a random invertible matrix (rnd.invertible).
/// kUniformRejection: uniform matrices until one passes is_mds.
inline FieldMatrix sample_mds(std::size_t rows, std::size_t cols, const PrimeField& f, Randomness& rnd,
                              SamplerMode mode = SamplerMode::kGrs,
                              std::size_t max_attempts = kDefaultRejectionCap) {
  if (rows > cols) throw Error(ErrorCode::kShapeError, "sample_mds needs rows <= cols");
  if (mode == SamplerMode::kGrs) {
    if (cols > f.modulus()) {
      throw Error(ErrorCode::kFieldTooSmall, std::to_string(cols) + " distinct points needed in F_" +
                                                 std::to_string(f.modulus()));
    }
    std::vector<Residue> points;
    std::vector<Residue> mults;
    points.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      points.push_back(rnd.fresh_point(f, points));
      mults.push_back(rnd.nonzero(f));
    }
    return rnd.invertible(rows, f) * grs_matrix(f, rows, points, mults);
  }
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    FieldMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rnd.element(f);
    if (is_mds(m)) return m;
  }
  throw Error(ErrorCode::kSamplingExhausted, "no MDS matrix after " + std::to_string(max_attempts) + " draws");
}

/// Randomness backed by a seeded 64-bit Mersenne twister.
class SeededRandomness : public Randomness {
 public:
  explicit SeededRandomness(std::uint64_t seed, SamplerMode mode = SamplerMode::kGrs) : engine_(seed), mode_(mode) {}

  SamplerMode mode() const noexcept { return mode_; }

  std::size_t below(std::size_t n) override {
    if (n == 0) throw Error(ErrorCode::kInvalidParameters, "below(0)");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  Residue element(const PrimeField& f) override {
    return std::uniform_int_distribution<Residue>(0, f.modulus() - 1)(engine_);
  }

  Residue nonzero(const PrimeField& f) override {
    return std::uniform_int_distribution<Residue>(1, f.modulus() - 1)(engine_);
  }

  Residue fresh_point(const PrimeField& f, std::span<const Residue> used) override {
    if (used.size() >= f.modulus()) throw Error(ErrorCode::kFieldTooSmall, "no unused point left");
    // Dense use of the field: pick among the complement directly.
    if (used.size() * 2 >= f.modulus()) {
      std::unordered_set<Residue> taken(used.begin(), used.end());
      std::vector<Residue> free;
      for (Residue v = 0; v < f.modulus(); ++v)
        if (!taken.count(v)) free.push_back(v);
      return free[below(free.size())];
    }
    while (true) {
      const Residue v = element(f);
      if (std::find(used.begin(), used.end(), v) == used.end()) return v;
    }
  }

  std::vector<std::size_t> permutation(std::size_t n) override {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    // Fisher-Yates with our own bounded draws.
    for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[below(i)]);
    return out;
  }

  std::vector<std::size_t> subset(std::size_t n, std::size_t k) override {
    if (k > n) throw Error(ErrorCode::kInvalidParameters, "subset larger than ground set");
    auto perm = permutation(n);
    perm.resize(k);
    std::sort(perm.begin(), perm.end());
    return perm;
  }

  std::size_t weighted_index(std::span<const std::uint64_t> weights) override {
    const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (total == 0) throw Error(ErrorCode::kInvalidParameters, "weights sum to zero");
    std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(engine_);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return weights.size() - 1;
  }

  FieldMatrix mds(std::size_t rows, std::size_t cols, const PrimeField& f) override {
    return sample_mds(rows, cols, f, *this, mode_);
  }

  FieldMatrix alignment_weights(std::size_t m, std::size_t t, const PrimeField& f) override {
    std::vector<Residue> used;
    used.reserve(m + t);
    for (std::size_t i = 0; i < m + t; ++i) used.push_back(fresh_point(f, used));
    return cauchy_matrix(std::span<const Residue>(used).first(m), std::span<const Residue>(used).subspan(m), f);
  }

  FieldMatrix invertible(std::size_t n, const PrimeField& f) override { return random_invertible(n, f, *this); }

 private:
  std::mt19937_64 engine_;
  SamplerMode mode_;
};

}  // namespace plt
