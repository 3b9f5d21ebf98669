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
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plt/error.hpp"
#include "plt/field.hpp"

namespace plt {

/// Vector over F_p. Entries are reduced on construction.
class FieldVector {
 public:
  FieldVector(const PrimeField& field, std::size_t length) : field_(field), entries_(length, 0) {}
  FieldVector(const PrimeField& field, std::vector<Residue> entries) : field_(field), entries_(std::move(entries)) {
    for (auto& e : entries_) e = field_.reduce(e);
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Residue operator[](std::size_t i) const { return entries_[i]; }
  Residue& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Residue> entries() const noexcept { return entries_; }
  std::span<Residue> entries() noexcept { return entries_; }

  FieldVector slice(std::size_t offset, std::size_t length) const {
    if (offset + length > size()) throw Error(ErrorCode::kShapeError, "vector slice out of range");
    return FieldVector(field_, std::vector<Residue>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                                    entries_.begin() + static_cast<std::ptrdiff_t>(offset + length)));
  }

  friend bool operator==(const FieldVector&, const FieldVector&) = default;

 private:
  PrimeField field_;
  std::vector<Residue> entries_;
};

/// Dense row-major matrix over F_p.
class FieldMatrix {
 public:
  FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols, std::vector<Residue> entries)
      : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::kShapeError, "entry count " + std::to_string(entries_.size()) + " != " +
                                              std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    for (auto& e : entries_) e = field_.reduce(e);
  }

  /// Builds from nested rows; all rows must have equal length.
  FieldMatrix(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : field_(field), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorCode::kShapeError, "ragged matrix literal");
      for (auto v : row) entries_.push_back(field_.reduce(v));
    }
  }

  static FieldMatrix identity(const PrimeField& field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Residue operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Residue& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::span<const Residue> entries() const noexcept { return entries_; }

  std::span<const Residue> row(std::size_t r) const {
    return std::span<const Residue>(entries_).subspan(r * cols_, cols_);
  }
  std::span<Residue> row(std::size_t r) { return std::span<Residue>(entries_).subspan(r * cols_, cols_); }

  FieldVector column(std::size_t c) const {
    FieldVector v(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
  }

  FieldMatrix transpose() const {
    FieldMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  FieldMatrix select_columns(std::span<const std::size_t> columns) const {
    FieldMatrix out(field_, rows_, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j] >= cols_) throw Error(ErrorCode::kShapeError, "column index out of range");
      for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, columns[j]);
    }
    return out;
  }

  FieldMatrix select_rows(std::span<const std::size_t> rows) const {
    FieldMatrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i] >= rows_) throw Error(ErrorCode::kShapeError, "row index out of range");
      std::copy_n(row(rows[i]).begin(), cols_, out.row(i).begin());
    }
    return out;
  }

  FieldMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) throw Error(ErrorCode::kShapeError, "block out of range");
    FieldMatrix out(field_, nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r)
      for (std::size_t c = 0; c < ncols; ++c) out(r, c) = (*this)(row0 + r, col0 + c);
    return out;
  }

  void set_block(std::size_t row0, std::size_t col0, const FieldMatrix& src) {
    if (row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
      throw Error(ErrorCode::kShapeError, "set_block out of range");
    }
    for (std::size_t r = 0; r < src.rows(); ++r)
      for (std::size_t c = 0; c < src.cols(); ++c) (*this)(row0 + r, col0 + c) = src(r, c);
  }

  FieldMatrix scaled(Residue s) const {
    FieldMatrix out = *this;
    for (auto& e : out.entries_) e = field_.mul(e, s);
    return out;
  }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> entries_;
};

inline FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.rows() || !(a.field() == b.field())) {
    throw Error(ErrorCode::kShapeError, "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                            " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const PrimeField& f = a.field();
  FieldMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Residue aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  }
  return out;
}

inline FieldVector operator*(const FieldMatrix& a, const FieldVector& x) {
  if (a.cols() != x.size() || !(a.field() == x.field())) throw Error(ErrorCode::kShapeError, "matrix-vector shape mismatch");
  const PrimeField& f = a.field();
  FieldVector out(f, a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Residue acc = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), x[k]));
    out[i] = acc;
  }
  return out;
}

inline FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::kShapeError, "matrix sum shape mismatch");
  FieldMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a.field().add(a(r, c), b(r, c));
  return out;
}

inline FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kShapeError, "hstack row mismatch");
  FieldMatrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

inline FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::kShapeError, "vstack column mismatch");
  FieldMatrix out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

inline std::ostream& operator<<(std::ostream& os, const FieldVector& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os << ']';
}

struct RrefResult {
  FieldMatrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
inline RrefResult rref(FieldMatrix m) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pivot_row = lead;
    while (pivot_row < m.rows() && m(pivot_row, c) == 0) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    if (pivot_row != lead) {
      auto a = m.row(pivot_row);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Residue scale = f.inv(m(lead, c));
    for (auto& e : m.row(lead)) e = f.mul(e, scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Residue factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(lead, k)));
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const FieldMatrix& m) { return rref(m).rank; }

/// Determinant of a square matrix by elimination.
inline Residue determinant(FieldMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kShapeError, "determinant of non-square matrix");
  const PrimeField& f = m.field();
  Residue det = 1 % f.modulus();
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      auto a = m.row(p);
      auto b = m.row(c);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const Residue inv_pivot = f.inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Residue factor = f.mul(m(r, c), inv_pivot);
      for (std::size_t k = c; k < n; ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(c, k)));
    }
  }
  return det;
}

inline FieldMatrix inverse(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kShapeError, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  auto red = rref(hstack(m, FieldMatrix::identity(m.field(), n)));
  if (red.rank < n || (n > 0 && red.pivots[n - 1] >= n)) throw Error(ErrorCode::kRankError, "matrix is singular");
  return red.reduced.block(0, n, n, n);
}

/// Some X with A * X = B, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<FieldMatrix> solve(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::kShapeError, "solve: row mismatch");
  const auto red = rref(hstack(a, b));
  FieldMatrix x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < red.rank; ++i) {
    const std::size_t pc = red.pivots[i];
    if (pc >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = red.reduced(i, a.cols() + j);
  }
  return x;
}

/// Some E with E * A = B (row-space solve), or nullopt.
inline std::optional<FieldMatrix> solve_left(const FieldMatrix& a, const FieldMatrix& b) {
  auto xt = solve(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

/// Basis of the right kernel {x : M x = 0}, one basis vector per row, so that
/// M * N^T = 0. Built from the RREF with the identity on the free columns.
inline FieldMatrix null_space(const FieldMatrix& m) {
  const PrimeField& f = m.field();
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  FieldMatrix basis(f, m.cols() - red.rank, m.cols());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(out, free) = 1;
    for (std::size_t i = 0; i < red.rank; ++i) basis(out, red.pivots[i]) = f.neg(red.reduced(i, free));
    ++out;
  }
  return basis;
}

}  // namespace plt
