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
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "plt/bounds.hpp"
#include "plt/codes.hpp"
#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/matrix.hpp"
#include "plt/mds.hpp"
#include "plt/random.hpp"

namespace plt {

/// Which construction the last block uses: interference alignment of
/// S-wide column blocks when L <= S, an embedded MDS generator when L > S.
enum class LayoutCase { kAligned, kCoded };

/// Shape of the query matrix G: n diagonal L x D blocks followed by one
/// last_rows x (D + R) block. Block indices are 1-based.
struct BlockLayout {
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t l = 0;
  std::size_t r = 0;  // K mod D
  std::size_t s = 0;  // gcd(D + R, R); D when R = 0
  LayoutCase kind = LayoutCase::kAligned;
  std::size_t n = 0;  // floor(K/D) - 1
  std::size_t t = 0;  // D/S - 1 (aligned case only)
  std::size_t m = 0;  // R/S + 1 (aligned case only)
  std::size_t last_rows = 0;
  std::size_t last_cols = 0;

  std::size_t blocks() const noexcept { return n + 1; }
  std::size_t total_rows() const noexcept { return l * n + last_rows; }
  std::size_t block_rows(std::size_t b) const noexcept { return b <= n ? l : last_rows; }
  std::size_t block_cols(std::size_t b) const noexcept { return b <= n ? d : last_cols; }
  std::size_t row_offset(std::size_t b) const noexcept { return (b - 1) * l; }
  std::size_t col_offset(std::size_t b) const noexcept { return (b - 1) * d; }
  /// Block containing 1-based column c.
  std::size_t block_of_column(std::size_t c) const noexcept { return c <= n * d ? (c - 1) / d + 1 : n + 1; }
};

inline BlockLayout make_layout(std::size_t k, std::size_t d, std::size_t l) {
  validate_parameters(static_cast<std::int64_t>(k), static_cast<std::int64_t>(d), static_cast<std::int64_t>(l));
  BlockLayout lay;
  lay.k = k;
  lay.d = d;
  lay.l = l;
  lay.r = k % d;
  lay.s = std::gcd(d + lay.r, lay.r);
  lay.n = k / d - 1;
  lay.last_cols = d + lay.r;
  if (l <= lay.s) {
    lay.kind = LayoutCase::kAligned;
    lay.t = d / lay.s - 1;
    lay.m = lay.r / lay.s + 1;
    lay.last_rows = l * lay.m;
  } else {
    lay.kind = LayoutCase::kCoded;
    lay.last_rows = l + lay.r;
  }
  return lay;
}

/// True iff g has the layout's shape and is zero outside its diagonal blocks.
inline bool matches_layout(const FieldMatrix& g, const BlockLayout& lay) {
  if (g.rows() != lay.total_rows() || g.cols() != lay.k) return false;
  for (std::size_t b = 1; b <= lay.blocks(); ++b) {
    const std::size_t r0 = lay.row_offset(b), c0 = lay.col_offset(b);
    for (std::size_t r = r0; r < r0 + lay.block_rows(b); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c) {
        const bool inside = c >= c0 && c < c0 + lay.block_cols(b);
        if (!inside && g(r, c) != 0) return false;
      }
  }
  return true;
}

/// The user's demand: Z = V X_W for a sorted 1-based support W.
struct Demand {
  std::size_t k = 0;
  std::vector<std::size_t> support;
  FieldMatrix coefficients;

  std::size_t d() const noexcept { return support.size(); }
  std::size_t l() const noexcept { return coefficients.rows(); }

  static Demand create(std::size_t k, std::vector<std::size_t> support, FieldMatrix coefficients) {
    if (support.empty() || coefficients.rows() == 0 || coefficients.cols() != support.size()) {
      throw Error(ErrorCode::kInvalidParameters, "coefficient matrix must be L x |W| with L >= 1");
    }
    if (!std::is_sorted(support.begin(), support.end()) ||
        std::adjacent_find(support.begin(), support.end()) != support.end() || support.front() < 1 ||
        support.back() > k) {
      throw Error(ErrorCode::kInvalidParameters, "support must be distinct indices in [1, K]");
    }
    validate_parameters(static_cast<std::int64_t>(k), static_cast<std::int64_t>(support.size()),
                        static_cast<std::int64_t>(coefficients.rows()));
    if (!is_mds(coefficients)) throw Error(ErrorCode::kNotMds, "demand coefficient matrix is not MDS");
    return Demand{k, std::move(support), std::move(coefficients)};
  }
};

/// V X_W computed directly.
inline FieldVector evaluate_demand(const Demand& demand, const FieldVector& x) {
  if (x.size() != demand.k) throw Error(ErrorCode::kShapeError, "message vector length != K");
  FieldVector xw(x.field(), demand.d());
  for (std::size_t j = 0; j < demand.d(); ++j) xw[j] = x[demand.support[j] - 1];
  return demand.coefficients * xw;
}

/// Query sent to the server: G and the permutation with pi[l-1] = pi(l).
struct Query {
  FieldMatrix g;
  std::vector<std::size_t> pi;
};

struct Answer {
  FieldVector y;
};

/// Recovery when the demand sits in one of the first n blocks: Z = y_{i*}.
struct DirectRecovery {};

/// Recovery by combining row blocks of the aligned last block.
struct AlignedRecovery {
  std::vector<std::size_t> embedded;    // I = {i_1 < ... < i_{t+1}}, column blocks holding V~
  std::vector<std::size_t> cancelled;   // {1..t} \ I
  std::vector<std::size_t> row_blocks;  // k_l - t for each k_l in I with k_l > t
  std::vector<Residue> coefficients;    // c_{k_l}, same order as row_blocks
  std::vector<Residue> alpha;           // alpha_1 .. alpha_{t+m}
  FieldMatrix weights;                  // m x t alignment weights
};

/// Recovery by E y_last for the embedded-generator last block.
struct CodedRecovery {
  std::vector<std::size_t> positions;  // h_1 < ... < h_D within the last block
  FieldMatrix combiner;                // E, L x (L + R)
};

using Recovery = std::variant<DirectRecovery, AlignedRecovery, CodedRecovery>;

/// Private data the user keeps to decode the answer.
struct ClientState {
  BlockLayout layout;
  std::size_t selected_block = 0;              // i*
  std::vector<std::size_t> ordered_support;    // W~
  FieldMatrix ordered_coefficients;            // V~
  Recovery recovery;
};

struct QueryPlan {
  Query query;
  ClientState state;
};

/// i* with P(i* = b) = D/K for b <= n and (D+R)/K for the last block.
inline std::size_t select_block(const BlockLayout& lay, Randomness& rnd) {
  std::vector<std::uint64_t> weights(lay.n, lay.d);
  weights.push_back(lay.last_cols);
  return rnd.weighted_index(weights) + 1;
}

struct AlignmentSolution {
  std::vector<std::size_t> cancelled;
  std::vector<std::size_t> row_blocks;
  std::vector<Residue> coefficients;
  std::vector<Residue> alpha;
};

/// Chooses c and alpha so that sum_l c_{k_l} (row block k_l - t) keeps every
/// C_i, i in I, with coefficient 1 and cancels every other C_j.
///
/// `embedded` is I (1-based, ascending, t+1 entries from {1..t+m}); weights
/// is the m x t matrix omega. Draw order: c_{k_1}, alpha over {1..t} \ I,
/// then alpha over the unused blocks of B_2.
inline AlignmentSolution solve_alignment(std::span<const std::size_t> embedded, const FieldMatrix& weights,
                                         Randomness& rnd) {
  const PrimeField& f = weights.field();
  const std::size_t m = weights.rows();
  const std::size_t t = weights.cols();
  if (embedded.size() != t + 1 || !std::is_sorted(embedded.begin(), embedded.end()) || embedded.front() < 1 ||
      embedded.back() > t + m) {
    throw Error(ErrorCode::kInvalidParameters, "embedded blocks must be t+1 ascending indices in [1, t+m]");
  }
  AlignmentSolution sol;
  std::vector<std::size_t> aligned_in_b1;  // I_1
  std::vector<std::size_t> tail;           // I_2 = {k_1, ..., k_s}
  for (auto i : embedded) (i <= t ? aligned_in_b1 : tail).push_back(i);
  for (std::size_t j = 1; j <= t; ++j)
    if (std::find(embedded.begin(), embedded.end(), j) == embedded.end()) sol.cancelled.push_back(j);
  const std::size_t s = tail.size();
  // |I| = t+1 > t, so at least one embedded block lies in B_2.
  if (s == 0 || sol.cancelled.size() + 1 != s) throw Error(ErrorCode::kStateError, "inconsistent alignment shape");

  auto omega = [&](std::size_t row_block, std::size_t col_block) { return weights(row_block - 1, col_block - 1); };

  std::vector<Residue> c(s);
  c[0] = rnd.nonzero(f);
  if (s > 1) {
    // M_1 restricted to columns k_2..k_s, right-hand side -c_{k_1} M_1[:, k_1].
    FieldMatrix lhs(f, s - 1, s - 1), rhs(f, s - 1, 1);
    for (std::size_t row = 0; row < s - 1; ++row) {
      const std::size_t j = sol.cancelled[row];
      for (std::size_t col = 1; col < s; ++col) lhs(row, col - 1) = omega(tail[col] - t, j);
      rhs(row, 0) = f.neg(f.mul(c[0], omega(tail[0] - t, j)));
    }
    const FieldMatrix rest = inverse(lhs) * rhs;
    for (std::size_t l = 1; l < s; ++l) c[l] = rest(l - 1, 0);
  }
  for (auto v : c) {
    if (v == 0) throw Error(ErrorCode::kStateError, "alignment produced a zero combiner coefficient");
  }

  sol.alpha.assign(t + m, 0);
  for (auto j : sol.cancelled) sol.alpha[j - 1] = rnd.nonzero(f);
  for (std::size_t l = 0; l < s; ++l) sol.alpha[tail[l] - 1] = f.inv(c[l]);
  for (auto i : aligned_in_b1) {
    Residue sum = 0;
    for (std::size_t l = 0; l < s; ++l) sum = f.add(sum, f.mul(c[l], omega(tail[l] - t, i)));
    if (sum == 0) throw Error(ErrorCode::kStateError, "alignment weights are not super-regular");
    sol.alpha[i - 1] = f.inv(sum);
  }
  for (std::size_t i = t + 1; i <= t + m; ++i)
    if (sol.alpha[i - 1] == 0) sol.alpha[i - 1] = rnd.nonzero(f);

  for (auto k : tail) sol.row_blocks.push_back(k - t);
  sol.coefficients = std::move(c);
  return sol;
}

/// G_{n+1} = [B_1, B_2] from C = [C_1 .. C_{t+m}], alpha and omega.
inline FieldMatrix assemble_aligned_block(const BlockLayout& lay, const FieldMatrix& c, std::span<const Residue> alpha,
                                          const FieldMatrix& weights) {
  const PrimeField& f = c.field();
  const std::size_t L = lay.l, S = lay.s, t = lay.t, m = lay.m;
  FieldMatrix g(f, L * m, lay.last_cols);
  for (std::size_t rb = 1; rb <= m; ++rb) {
    for (std::size_t j = 1; j <= t; ++j) {
      const Residue scale = f.mul(alpha[j - 1], weights(rb - 1, j - 1));
      g.set_block((rb - 1) * L, (j - 1) * S, c.block(0, (j - 1) * S, L, S).scaled(scale));
    }
    const std::size_t own = t + rb;
    g.set_block((rb - 1) * L, (own - 1) * S, c.block(0, (own - 1) * S, L, S).scaled(alpha[own - 1]));
  }
  return g;
}

struct LastBlock {
  FieldMatrix g;
  Recovery recovery;
};

/// Last block for L <= S. With `demand` set, V~'s S-wide column blocks are
/// embedded as C_{i_1}, ..., C_{i_{t+1}} and the scalars are aligned;
/// otherwise C, omega and alpha are all random.
inline LastBlock build_last_block_aligned(const BlockLayout& lay, const std::optional<FieldMatrix>& demand,
                                          const PrimeField& f, Randomness& rnd) {
  if (lay.kind != LayoutCase::kAligned) throw Error(ErrorCode::kStateError, "layout is not the aligned case");
  if (!demand) {
    FieldMatrix c = rnd.mds(lay.l, lay.last_cols, f);
    FieldMatrix weights = rnd.alignment_weights(lay.m, lay.t, f);
    std::vector<Residue> alpha(lay.t + lay.m);
    for (auto& a : alpha) a = rnd.nonzero(f);
    return {assemble_aligned_block(lay, c, alpha, weights), DirectRecovery{}};
  }
  std::vector<std::size_t> embedded = rnd.subset(lay.t + lay.m, lay.t + 1);
  for (auto& i : embedded) ++i;
  std::vector<std::size_t> positions;
  positions.reserve(lay.d);
  for (auto block : embedded)
    for (std::size_t q = 0; q < lay.s; ++q) positions.push_back((block - 1) * lay.s + q);
  const FieldMatrix c = extend_pinned_mds(*demand, lay.last_cols, positions, rnd);
  FieldMatrix weights = rnd.alignment_weights(lay.m, lay.t, f);
  AlignmentSolution sol = solve_alignment(embedded, weights, rnd);
  FieldMatrix g = assemble_aligned_block(lay, c, sol.alpha, weights);
  return {std::move(g), AlignedRecovery{std::move(embedded), std::move(sol.cancelled), std::move(sol.row_blocks),
                                        std::move(sol.coefficients), std::move(sol.alpha), std::move(weights)}};
}

/// Last block for L > S: an (L+R) x (D+R) MDS generator. With `demand` set
/// its row space contains V~ spread onto a random D-subset h.
inline LastBlock build_last_block_coded(const BlockLayout& lay, const std::optional<FieldMatrix>& demand,
                                        const PrimeField& f, Randomness& rnd) {
  if (lay.kind != LayoutCase::kCoded) throw Error(ErrorCode::kStateError, "layout is not the coded case");
  if (!demand) return {rnd.mds(lay.last_rows, lay.last_cols, f), DirectRecovery{}};
  const std::vector<std::size_t> h = rnd.subset(lay.last_cols, lay.d);
  const FieldMatrix generator = embed_mds_generator(*demand, lay.last_cols, h, rnd);
  FieldMatrix g = rnd.invertible(lay.last_rows, f) * generator;
  FieldMatrix combiner = embedding_combiner(g, *demand, h);
  std::vector<std::size_t> positions(h);
  for (auto& p : positions) ++p;
  return {std::move(g), CodedRecovery{std::move(positions), std::move(combiner)}};
}

/// 1-based images of W~ under pi, in W~ order, for the selected branch.
inline std::vector<std::size_t> demand_images(const BlockLayout& lay, std::size_t selected, const Recovery& rec) {
  std::vector<std::size_t> images(lay.d);
  if (selected <= lay.n) {
    for (std::size_t j = 1; j <= lay.d; ++j) images[j - 1] = (selected - 1) * lay.d + j;
    return images;
  }
  const std::size_t base = lay.n * lay.d;
  if (const auto* aligned = std::get_if<AlignedRecovery>(&rec)) {
    for (std::size_t j = 1; j <= lay.d; ++j) {
      const std::size_t block = aligned->embedded[(j - 1) / lay.s];
      const std::size_t within = j % lay.s == 0 ? lay.s : j % lay.s;
      images[j - 1] = base + (block - 1) * lay.s + within;
    }
    return images;
  }
  if (const auto* coded = std::get_if<CodedRecovery>(&rec)) {
    for (std::size_t j = 0; j < lay.d; ++j) images[j] = base + coded->positions[j];
    return images;
  }
  throw Error(ErrorCode::kStateError, "last block selected without recovery data");
}

/// pi with pi(W~_j) = images[j]; the indices outside W, taken in ascending
/// order, receive a uniformly random arrangement of the unused images.
inline std::vector<std::size_t> build_permutation(std::size_t k, std::span<const std::size_t> ordered_support,
                                                  std::span<const std::size_t> images, Randomness& rnd) {
  std::vector<std::size_t> pi(k, 0);
  std::vector<bool> used(k + 1, false);
  for (std::size_t j = 0; j < ordered_support.size(); ++j) {
    pi[ordered_support[j] - 1] = images[j];
    used[images[j]] = true;
  }
  std::vector<std::size_t> free_images;
  for (std::size_t v = 1; v <= k; ++v)
    if (!used[v]) free_images.push_back(v);
  const auto order = rnd.permutation(free_images.size());
  std::size_t next = 0;
  for (std::size_t l = 1; l <= k; ++l) {
    if (pi[l - 1] == 0) pi[l - 1] = free_images[order[next++]];
  }
  return pi;
}

/// Builds the query (G, pi) and the private recovery state.
///
/// Randomness is consumed in this order: column order of the demand, block
/// selection, the first n blocks, the last block, the filler permutation.
inline QueryPlan gen_query(const Demand& demand, Randomness& rnd) {
  const PrimeField& f = demand.coefficients.field();
  const BlockLayout lay = make_layout(demand.k, demand.d(), demand.l());
  if (lay.last_cols >= f.modulus()) {
    throw Error(ErrorCode::kFieldTooSmall, "need p > D + R = " + std::to_string(lay.last_cols));
  }

  const auto order = rnd.permutation(lay.d);
  std::vector<std::size_t> ordered_support(lay.d);
  for (std::size_t j = 0; j < lay.d; ++j) ordered_support[j] = demand.support[order[j]];
  FieldMatrix ordered_coefficients = demand.coefficients.select_columns(order);

  const std::size_t selected = select_block(lay, rnd);

  FieldMatrix g(f, lay.total_rows(), lay.k);
  for (std::size_t b = 1; b <= lay.n; ++b) {
    const FieldMatrix block = b == selected ? ordered_coefficients : rnd.mds(lay.l, lay.d, f);
    g.set_block(lay.row_offset(b), lay.col_offset(b), block);
  }
  std::optional<FieldMatrix> embedded;
  if (selected == lay.n + 1) embedded = ordered_coefficients;
  LastBlock last = lay.kind == LayoutCase::kAligned ? build_last_block_aligned(lay, embedded, f, rnd)
                                                    : build_last_block_coded(lay, embedded, f, rnd);
  g.set_block(lay.row_offset(lay.n + 1), lay.col_offset(lay.n + 1), last.g);

  const auto images = demand_images(lay, selected, last.recovery);
  auto pi = build_permutation(lay.k, ordered_support, images, rnd);

  return QueryPlan{Query{std::move(g), std::move(pi)},
                   ClientState{lay, selected, std::move(ordered_support), std::move(ordered_coefficients),
                               std::move(last.recovery)}};
}

/// Checks that pi is a 1-based bijection on {1..k}.
inline bool is_permutation_of(std::span<const std::size_t> pi, std::size_t k) {
  if (pi.size() != k) return false;
  std::vector<bool> seen(k + 1, false);
  for (auto v : pi) {
    if (v < 1 || v > k || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// Server side: X~_{pi(l)} = X_l, y = G X~.
inline Answer answer(const Query& query, const FieldVector& x) {
  const std::size_t k = x.size();
  if (query.g.cols() != k) throw Error(ErrorCode::kShapeError, "G has " + std::to_string(query.g.cols()) +
                                                                   " columns but there are " + std::to_string(k) +
                                                                   " messages");
  if (!is_permutation_of(query.pi, k)) throw Error(ErrorCode::kShapeError, "pi is not a permutation of 1..K");
  FieldVector permuted(x.field(), k);
  for (std::size_t l = 0; l < k; ++l) permuted[query.pi[l] - 1] = x[l];
  return Answer{query.g * permuted};
}

/// Client side: decodes Z = V X_W from the answer.
inline FieldVector recover(const Answer& ans, const ClientState& state) {
  const BlockLayout& lay = state.layout;
  const FieldVector& y = ans.y;
  if (y.size() != lay.total_rows()) {
    throw Error(ErrorCode::kStateError, "answer has " + std::to_string(y.size()) + " entries, layout expects " +
                                            std::to_string(lay.total_rows()));
  }
  const PrimeField& f = y.field();
  if (state.selected_block <= lay.n) {
    return y.slice(lay.row_offset(state.selected_block), lay.l);
  }
  const FieldVector last = y.slice(lay.row_offset(lay.n + 1), lay.last_rows);
  if (const auto* aligned = std::get_if<AlignedRecovery>(&state.recovery)) {
    FieldVector z(f, lay.l);
    for (std::size_t q = 0; q < aligned->row_blocks.size(); ++q) {
      const std::size_t offset = (aligned->row_blocks[q] - 1) * lay.l;
      if (offset + lay.l > last.size()) throw Error(ErrorCode::kStateError, "row block out of range");
      for (std::size_t i = 0; i < lay.l; ++i) z[i] = f.add(z[i], f.mul(aligned->coefficients[q], last[offset + i]));
    }
    return z;
  }
  if (const auto* coded = std::get_if<CodedRecovery>(&state.recovery)) {
    if (coded->combiner.cols() != last.size()) throw Error(ErrorCode::kStateError, "combiner width mismatch");
    return coded->combiner * last;
  }
  throw Error(ErrorCode::kStateError, "last block selected without recovery data");
}

}  // namespace plt
