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
#include <span>
#include <string>
#include <vector>

#include "plt/error.hpp"
#include "plt/grs.hpp"
#include "plt/matrix.hpp"
#include "plt/mds.hpp"
#include "plt/random.hpp"

namespace plt {

inline constexpr std::size_t kDefaultColumnRetries = 10'000;

/// Parity-check matrix (D-L) x D of the code generated by an MDS matrix V.
///
/// For a GRS generator this is the GRS matrix on the same points with the
/// dual multipliers. Otherwise it is the canonical RREF dual [-P^T | I] with
/// the identity block on the non-pivot columns.
inline FieldMatrix parity_check(const FieldMatrix& v) {
  if (v.rows() > v.cols()) throw Error(ErrorCode::kShapeError, "parity_check needs rows <= cols");
  const PrimeField& f = v.field();
  if (v.rows() == v.cols()) {
    if (rank(v) != v.rows()) throw Error(ErrorCode::kNotMds, "square generator is singular");
    return FieldMatrix(f, 0, v.cols());
  }
  if (auto grs = recognize_grs(v)) {
    return grs_matrix(f, v.cols() - v.rows(), grs->points, dual_multipliers(f, grs->points, grs->multipliers));
  }
  if (!is_mds(v)) throw Error(ErrorCode::kNotMds, "generator is not MDS");
  return null_space(v);
}

/// Extends an a x b MDS matrix to a x n, keeping column j of `pinned` at
/// column positions[j] of the result.
///
/// If `pinned` is a GRS generator the free columns are new GRS columns on fresh
/// points with random multipliers. Otherwise each free column is drawn
/// uniformly and rejected while it zeroes any maximal minor, with at most
/// `max_retries` draws per column.
inline FieldMatrix extend_pinned_mds(const FieldMatrix& pinned, std::size_t n, std::span<const std::size_t> positions,
                                     Randomness& rnd, std::size_t max_retries = kDefaultColumnRetries) {
  const PrimeField& f = pinned.field();
  const std::size_t a = pinned.rows();
  if (positions.size() != pinned.cols() || n < pinned.cols()) {
    throw Error(ErrorCode::kShapeError, "pinned positions do not match the pinned matrix");
  }
  std::vector<bool> taken(n, false);
  for (auto pos : positions) {
    if (pos >= n || taken[pos]) throw Error(ErrorCode::kInvalidParameters, "pinned positions must be distinct and < n");
    taken[pos] = true;
  }
  FieldMatrix out(f, a, n);
  for (std::size_t j = 0; j < positions.size(); ++j)
    for (std::size_t r = 0; r < a; ++r) out(r, positions[j]) = pinned(r, j);

  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!taken[c]) free.push_back(c);
  if (a == 0 || free.empty()) return out;
  if (a > pinned.cols()) throw Error(ErrorCode::kShapeError, "pinned matrix has more rows than columns");

  if (auto grs = recognize_grs(pinned); grs && n <= f.modulus()) {
    std::vector<Residue> used = grs->points;
    const std::vector<Residue> unit{1};
    for (auto c : free) {
      const Residue point = rnd.fresh_point(f, used);
      const Residue mult = rnd.nonzero(f);
      used.push_back(point);
      const FieldMatrix col = grs->transform * grs_matrix(f, a, std::span<const Residue>(&point, 1),
                                                          std::span<const Residue>(&mult, 1));
      for (std::size_t r = 0; r < a; ++r) out(r, c) = col(r, 0);
    }
    return out;
  }

  if (!is_mds(pinned)) throw Error(ErrorCode::kNotMds, "pinned matrix is not MDS");
  std::vector<std::size_t> placed(positions.begin(), positions.end());
  for (auto c : free) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < max_retries && !accepted; ++attempt) {
      for (std::size_t r = 0; r < a; ++r) out(r, c) = rnd.element(f);
      accepted = for_each_combination(placed.size(), a - 1, [&](std::span<const std::size_t> pick) {
        std::vector<std::size_t> cols;
        cols.reserve(a);
        for (auto i : pick) cols.push_back(placed[i]);
        cols.push_back(c);
        return determinant(out.select_columns(cols)) != 0;
      });
    }
    if (!accepted) {
      throw Error(ErrorCode::kSamplingExhausted, "no admissible column for position " + std::to_string(c) + " after " +
                                                     std::to_string(max_retries) + " draws");
    }
    placed.push_back(c);
  }
  return out;
}

/// Generator (n-a) x n of the code whose parity-check matrix is H (rank a).
///
/// GRS parity checks give the GRS generator on the same points with dual
/// multipliers; anything else gives the RREF null-space basis.
inline FieldMatrix generator_from_parity(const FieldMatrix& h) {
  const PrimeField& f = h.field();
  if (rank(h) != h.rows()) throw Error(ErrorCode::kRankError, "parity-check matrix is rank deficient");
  if (h.rows() == 0) return FieldMatrix::identity(f, h.cols());
  if (h.rows() < h.cols()) {
    if (auto grs = recognize_grs(h)) {
      return grs_matrix(f, h.cols() - h.rows(), grs->points, dual_multipliers(f, grs->points, grs->multipliers));
    }
  }
  return null_space(h);
}

/// L x n matrix holding V's columns at positions h and zeros elsewhere.
inline FieldMatrix spread_columns(const FieldMatrix& v, std::size_t n, std::span<const std::size_t> positions) {
  if (positions.size() != v.cols()) throw Error(ErrorCode::kShapeError, "spread_columns: position count");
  FieldMatrix u(v.field(), v.rows(), n);
  for (std::size_t j = 0; j < positions.size(); ++j)
    for (std::size_t r = 0; r < v.rows(); ++r) u(r, positions[j]) = v(r, j);
  return u;
}

/// (L+R) x n MDS generator whose row space contains the L rows of V spread
/// onto positions h (|h| = D, n = D + R).
///
/// Pipeline: parity check of V, extension to length n with the parity
/// columns pinned at h, then the generator of that parity-check matrix.
/// When L = D every invertible matrix qualifies and a random MDS square is
/// drawn from rnd.mds.
inline FieldMatrix embed_mds_generator(const FieldMatrix& v, std::size_t n, std::span<const std::size_t> h,
                                       Randomness& rnd) {
  const PrimeField& f = v.field();
  if (h.size() != v.cols() || n < v.cols()) throw Error(ErrorCode::kShapeError, "embed: |h| must equal D <= n");
  if (n > f.modulus()) throw Error(ErrorCode::kFieldTooSmall, "embedding length exceeds field size");
  if (v.rows() == v.cols()) return rnd.mds(n, n, f);
  const FieldMatrix lambda = parity_check(v);
  const FieldMatrix ext = extend_pinned_mds(lambda, n, h, rnd);
  return generator_from_parity(ext);
}

/// E with E * G = spread_columns(V, G.cols(), h); throws StateError if the
/// spread rows are not in the row space of G.
inline FieldMatrix embedding_combiner(const FieldMatrix& g, const FieldMatrix& v, std::span<const std::size_t> h) {
  const auto e = solve_left(g, spread_columns(v, g.cols(), h));
  if (!e) throw Error(ErrorCode::kStateError, "demand rows are not in the row space of the generator");
  return *e;
}

}  // namespace plt
