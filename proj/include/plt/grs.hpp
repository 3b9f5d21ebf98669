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
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "plt/field.hpp"
#include "plt/matrix.hpp"

namespace plt {

/// A generator of a generalized Reed-Solomon code written as
/// transform * vandermonde(points) * diag(multipliers).
struct GrsForm {
  std::vector<Residue> points;       // distinct evaluation points, one per column
  std::vector<Residue> multipliers;  // nonzero column multipliers
  FieldMatrix transform;             // invertible rows x rows
};

/// rows x n matrix whose column j is multipliers[j] * (1, x_j, ..., x_j^{rows-1}).
inline FieldMatrix grs_matrix(const PrimeField& f, std::size_t rows, std::span<const Residue> points,
                              std::span<const Residue> multipliers) {
  FieldMatrix m(f, rows, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Residue v = multipliers[j];
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = v;
      v = f.mul(v, points[j]);
    }
  }
  return m;
}

/// Column multipliers of the dual code: (v_j * prod_{l != j} (x_j - x_l))^{-1}.
inline std::vector<Residue> dual_multipliers(const PrimeField& f, std::span<const Residue> points,
                                             std::span<const Residue> multipliers) {
  std::vector<Residue> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    Residue prod = multipliers[j];
    for (std::size_t l = 0; l < points.size(); ++l) {
      if (l != j) prod = f.mul(prod, f.sub(points[j], points[l]));
    }
    out[j] = f.inv(prod);
  }
  return out;
}

namespace detail {

inline bool all_distinct(std::span<const Residue> xs) {
  std::unordered_set<Residue> seen;
  for (auto x : xs) {
    if (!seen.insert(x).second) return false;
  }
  return true;
}

// Column-wise geometric check: M(i, j) = beta_j * omega_j^i. Needs rows >= 2.
inline std::optional<GrsForm> vandermonde_form(const FieldMatrix& m) {
  const PrimeField& f = m.field();
  std::vector<Residue> points(m.cols()), mults(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Residue beta = m(0, j);
    if (beta == 0) return std::nullopt;
    const Residue omega = f.div(m(1, j), beta);
    Residue expect = beta;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) != expect) return std::nullopt;
      expect = f.mul(expect, omega);
    }
    points[j] = omega;
    mults[j] = beta;
  }
  if (!all_distinct(points)) return std::nullopt;
  return GrsForm{std::move(points), std::move(mults), FieldMatrix::identity(f, m.rows())};
}

// Given candidate points for a systematic generator [I | P], finds multipliers
// with [I | P] generating GRS(points, multipliers), then the transform for m.
inline std::optional<GrsForm> fit_multipliers(const FieldMatrix& m, const FieldMatrix& parity_part,
                                              std::vector<Residue> points) {
  const PrimeField& f = m.field();
  const std::size_t k = m.rows();
  const std::size_t r = parity_part.cols();
  if (!all_distinct(points)) return std::nullopt;
  const std::vector<Residue> ones(points.size(), 1);
  const FieldMatrix plain = grs_matrix(f, k, points, ones);
  std::vector<std::size_t> info(k), par(r);
  for (std::size_t i = 0; i < k; ++i) info[i] = i;
  for (std::size_t j = 0; j < r; ++j) par[j] = k + j;
  const FieldMatrix base = inverse(plain.select_columns(info)) * plain.select_columns(par);

  std::vector<Residue> mults(k + r, 0);
  mults[0] = 1;
  for (std::size_t j = 0; j < r; ++j) {
    if (base(0, j) == 0) return std::nullopt;
    mults[k + j] = f.div(parity_part(0, j), base(0, j));
  }
  for (std::size_t i = 1; i < k; ++i) {
    if (r == 0) {
      mults[i] = 1;
      continue;
    }
    if (parity_part(i, 0) == 0) return std::nullopt;
    mults[i] = f.div(f.mul(base(i, 0), mults[k]), parity_part(i, 0));
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (f.mul(parity_part(i, j), mults[i]) != f.mul(base(i, j), mults[k + j])) return std::nullopt;
    }
  }
  if (std::any_of(mults.begin(), mults.end(), [](Residue v) { return v == 0; })) return std::nullopt;

  const FieldMatrix grs = grs_matrix(f, k, points, mults);
  FieldMatrix transform = m.select_columns(info) * inverse(grs.select_columns(info));
  if (!(transform * grs == m)) return std::nullopt;
  return GrsForm{std::move(points), std::move(mults), std::move(transform)};
}

}  // namespace detail

/// Recognizes m as a generator of a GRS code and recovers its structure.
///
/// Matrices already in Vandermonde-with-multipliers form are read off column
/// by column (transform = I). Otherwise the systematic part P of [I | P] must
/// be a generalized Cauchy matrix P_ij = c_i d_j / (b_j - a_i); the points are
/// recovered under the normalization a_1 = 0, b_1 = 1 by scanning the one
/// remaining Moebius degree of freedom, and every candidate is verified
/// exactly. Returns nullopt when m is not a GRS generator with finite points.
inline std::optional<GrsForm> recognize_grs(const FieldMatrix& m) {
  const PrimeField& f = m.field();
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  if (k == 0 || n < k || n > f.modulus()) return std::nullopt;
  if (k >= 2) {
    if (auto direct = detail::vandermonde_form(m)) return direct;
  }

  const auto red = rref(m);
  if (red.rank < k) return std::nullopt;
  for (std::size_t i = 0; i < k; ++i) {
    if (red.pivots[i] != i) return std::nullopt;
  }
  const std::size_t r = n - k;
  const FieldMatrix parity_part = red.reduced.block(0, k, k, r);
  for (auto e : parity_part.entries()) {
    if (e == 0) return std::nullopt;
  }

  if (k == 1 || r <= 1) {
    std::vector<Residue> points(n);
    for (std::size_t j = 0; j < n; ++j) points[j] = j;
    return detail::fit_multipliers(m, parity_part, std::move(points));
  }

  // rho_ij = P_i1 P_1j / (P_11 P_ij) = (b_j - a_i) / ((1 - a_i) b_j) once a_1 = 0, b_1 = 1.
  auto rho = [&](std::size_t i, std::size_t j) {
    return f.div(f.mul(parity_part(i, 0), parity_part(0, j)), f.mul(parity_part(0, 0), parity_part(i, j)));
  };
  const std::uint64_t tries = std::min<std::uint64_t>(f.modulus(), n + 4);
  for (std::uint64_t theta = 2; theta < tries + 2 && theta < f.modulus(); ++theta) {
    std::vector<Residue> a(k), b(r);
    a[0] = 0;
    b[0] = 1;
    a[1] = theta;
    bool ok = true;
    for (std::size_t j = 1; j < r && ok; ++j) {
      const Residue den = f.sub(1, f.mul(rho(1, j), f.sub(1, theta)));
      if (den == 0) ok = false;
      else b[j] = f.div(theta, den);
    }
    for (std::size_t i = 2; i < k && ok; ++i) {
      const Residue rh = rho(i, 1);
      const Residue den = f.sub(f.mul(rh, b[1]), 1);
      if (den == 0) ok = false;
      else a[i] = f.div(f.mul(b[1], f.sub(rh, 1)), den);
    }
    if (!ok) continue;
    std::vector<Residue> points(a);
    points.insert(points.end(), b.begin(), b.end());
    if (auto form = detail::fit_multipliers(m, parity_part, std::move(points))) return form;
  }
  return std::nullopt;
}

}  // namespace plt
