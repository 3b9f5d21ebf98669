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

// Brute-force reference computations. Plain integer arithmetic only; nothing
// here calls into the library's elimination or GRS code.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Int = std::int64_t;
using Mat = std::vector<std::vector<Int>>;

inline Int mod(Int a, Int p) { return ((a % p) + p) % p; }

/// b with a*b = 1 mod p, by trying every residue; -1 if none.
inline Int inverse(Int a, Int p) {
  for (Int b = 1; b < p; ++b)
    if (mod(a * b, p) == 1) return b;
  return -1;
}

/// Sum over permutations of signed products.
inline Int leibniz_det(const Mat& m, Int p) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    Int term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mod(term * m[i][perm[i]], p);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total = mod(total + (inversions % 2 ? -term : term), p);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Mat columns(const Mat& m, const std::vector<std::size_t>& cols) {
  Mat out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (auto c : cols) out[r].push_back(m[r][c]);
  return out;
}

inline Mat rows_of(const Mat& m, const std::vector<std::size_t>& rows) {
  Mat out;
  for (auto r : rows) out.push_back(m[r]);
  return out;
}

/// Calls visit on every k-subset of {0..n-1} in lexicographic order.
inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(k, n)), true);
  if (k > n) return;
  do {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) pick.push_back(i);
    visit(pick);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

/// Every maximal minor nonzero, each by the Leibniz formula.
inline bool is_mds(const Mat& m, Int p) {
  const std::size_t k = m.size();
  const std::size_t n = k ? m[0].size() : 0;
  bool ok = true;
  subsets(n, k, [&](const std::vector<std::size_t>& pick) { ok = ok && leibniz_det(columns(m, pick), p) != 0; });
  return ok;
}

/// Every square submatrix nonzero.
inline bool is_super_regular(const Mat& m, Int p) {
  const std::size_t rows = m.size(), cols = m[0].size();
  bool ok = true;
  for (std::size_t s = 1; s <= std::min(rows, cols); ++s)
    subsets(rows, s, [&](const std::vector<std::size_t>& rp) {
      subsets(cols, s, [&](const std::vector<std::size_t>& cp) {
        ok = ok && leibniz_det(columns(rows_of(m, rp), cp), p) != 0;
      });
    });
  return ok;
}

inline std::vector<Int> mat_vec(const Mat& m, const std::vector<Int>& v, Int p) {
  std::vector<Int> out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] = mod(out[r] + m[r][c] * v[c], p);
  return out;
}

/// Calls visit on every vector of F_p^n.
inline void all_vectors(std::size_t n, Int p, const std::function<void(const std::vector<Int>&)>& visit) {
  std::vector<Int> v(n, 0);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) return;
  }
}

/// All x with M x = 0.
inline std::set<std::vector<Int>> null_vectors(const Mat& m, Int p) {
  std::set<std::vector<Int>> out;
  const std::size_t n = m.empty() ? 0 : m[0].size();
  all_vectors(n, p, [&](const std::vector<Int>& x) {
    const auto y = mat_vec(m, x, p);
    if (std::all_of(y.begin(), y.end(), [](Int e) { return e == 0; })) out.insert(x);
  });
  return out;
}

/// All combinations of the rows of m.
inline std::set<std::vector<Int>> row_span(const Mat& m, Int p) {
  std::set<std::vector<Int>> out;
  const std::size_t n = m.empty() ? 0 : m[0].size();
  all_vectors(m.size(), p, [&](const std::vector<Int>& coef) {
    std::vector<Int> v(n, 0);
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) v[c] = mod(v[c] + coef[r] * m[r][c], p);
    out.insert(v);
  });
  return out;
}

/// Some e with e^T A = target, by enumeration; empty if none.
inline std::vector<Int> left_solve_row(const Mat& a, const std::vector<Int>& target, Int p) {
  std::vector<Int> found;
  bool done = false;
  all_vectors(a.size(), p, [&](const std::vector<Int>& e) {
    if (done) return;
    for (std::size_t c = 0; c < target.size(); ++c) {
      Int s = 0;
      for (std::size_t r = 0; r < a.size(); ++r) s = mod(s + e[r] * a[r][c], p);
      if (s != target[c]) return;
    }
    found = e;
    done = true;
  });
  return found;
}

/// Rank as log_p of the row-span size.
inline std::size_t rank(const Mat& m, Int p) {
  std::size_t size = row_span(m, p).size(), r = 0;
  while (size > 1) {
    size /= static_cast<std::size_t>(p);
    ++r;
  }
  return r;
}

/// Min over T >= 0 with T_D >= 1 and sum j T_j = K of
/// sum_{j<=L} j T_j + sum_{j>L} L T_j, by unbounded-knapsack DP.
inline Int converse_dp(Int k, Int d, Int l) {
  const Int inf = std::numeric_limits<Int>::max() / 4;
  std::vector<Int> best(static_cast<std::size_t>(k + 1), inf);
  best[0] = 0;
  for (Int x = 1; x <= k; ++x)
    for (Int j = 1; j <= std::min(d, x); ++j) {
      const Int prev = best[static_cast<std::size_t>(x - j)];
      if (prev < inf) best[static_cast<std::size_t>(x)] = std::min(best[static_cast<std::size_t>(x)], prev + std::min(j, l));
    }
  const Int rest = best[static_cast<std::size_t>(k - d)];
  return rest >= inf ? -1 : rest + std::min(d, l);
}

/// Reduced fraction num/den.
struct Frac {
  Int num = 0;
  Int den = 1;
};

inline Frac make_frac(Int num, Int den) {
  const Int g = std::gcd(num, den);
  return {num / g, den / g};
}

/// 1 / (a + b/c) with b/c reduced first.
inline Frac reciprocal_of_sum(Int a, Int b, Int c) { return make_frac(c, a * c + b); }

}  // namespace oracle
