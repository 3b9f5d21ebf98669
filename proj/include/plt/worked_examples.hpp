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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "plt/codes.hpp"
#include "plt/field.hpp"
#include "plt/gpc_pia.hpp"
#include "plt/matrix.hpp"
#include "plt/replay.hpp"

namespace plt {

/// A fully scripted protocol run over F_13 with K = 20 and its expected
/// query. The script feeds every random choice of the run in draw order.
struct WorkedExample {
  std::string name;
  PrimeField field;
  Demand demand;
  ScriptedRandomness script;
  std::vector<std::size_t> ordered_support;  // W~
  std::vector<std::size_t> permuted_order;   // X~ listed by message index
  FieldMatrix g;
  std::vector<std::pair<std::string, FieldMatrix>> intermediates;
};

inline FieldMatrix block_diagonal(const PrimeField& f, const std::vector<FieldMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  FieldMatrix out(f, rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

/// L = 3 <= S = 4: D = 8, aligned last block, block 2 selected.
inline WorkedExample worked_example_1() {
  const PrimeField f(13);
  FieldMatrix v(f, {{7, 3, 12, 10, 2, 1, 5, 6}, {3, 6, 5, 12, 8, 3, 11, 4}, {5, 12, 1, 4, 6, 9, 6, 7}});
  FieldMatrix g1(f, {{5, 8, 4, 7, 4, 3, 4, 2}, {7, 4, 12, 9, 1, 10, 6, 5}, {2, 2, 10, 6, 10, 3, 9, 6}});
  FieldMatrix c1(f, {{1, 9, 11, 2}, {7, 9, 2, 9}, {10, 9, 11, 8}});
  FieldMatrix g2(f, {{2, 5, 9, 4, 10, 4, 7, 5, 0, 0, 0, 0},
                     {1, 5, 4, 5, 4, 8, 2, 4, 0, 0, 0, 0},
                     {7, 5, 9, 3, 12, 3, 8, 11, 0, 0, 0, 0},
                     {2, 5, 9, 4, 0, 0, 0, 0, 4, 10, 2, 5},
                     {1, 5, 4, 5, 0, 0, 0, 0, 10, 2, 7, 12},
                     {7, 5, 9, 3, 0, 0, 0, 0, 12, 3, 5, 8}});
  FieldMatrix v_tilde(f, {{1, 3, 2, 7, 10, 12, 5, 6}, {3, 6, 8, 3, 12, 5, 11, 4}, {9, 12, 6, 5, 4, 1, 6, 7}});

  ScriptedRandomness script;
  script.push_permutation({5, 1, 4, 0, 3, 2, 6, 7});
  script.push_weighted_index(1);
  script.push_mds(g1);
  script.push_subset({1, 2});
  for (Residue x : {7, 1, 12, 11}) script.push_fresh_point(x);
  // column multipliers of C_1, then c_2 and alpha_1
  for (Residue x : {1, 9, 11, 2, 4, 2}) script.push_nonzero(x);
  script.push_alignment_weights(FieldMatrix(f, {{1}, {1}}));
  // pi(1), pi(3), pi(6), pi(9), pi(13..20) = 3, 8, 1, 2, 9, 11, 5, 4, 12, 6, 10, 7
  script.push_permutation({2, 7, 0, 1, 8, 10, 4, 3, 11, 5, 9, 6});

  WorkedExample ex{"example 1 (L <= S)",
                   f,
                   Demand::create(20, {2, 4, 5, 7, 8, 10, 11, 12}, v),
                   std::move(script),
                   {10, 4, 8, 2, 7, 5, 11, 12},
                   {6, 9, 1, 16, 15, 18, 20, 3, 13, 19, 14, 17, 10, 4, 8, 2, 7, 5, 11, 12},
                   block_diagonal(f, {g1, g2}),
                   {}};
  ex.intermediates = {{"V~", v_tilde}, {"G_1", g1}, {"C_1", c1}, {"G_2", g2}};
  return ex;
}

/// L = 3 > S = 2: D = 6, coded last block, block 3 selected.
inline WorkedExample worked_example_2() {
  const PrimeField f(13);
  FieldMatrix v(f, {{7, 3, 12, 10, 2, 1}, {3, 6, 5, 12, 8, 3}, {5, 12, 1, 4, 6, 9}});
  FieldMatrix g1(f, {{11, 5, 3, 1, 4, 2}, {7, 10, 2, 6, 6, 5}, {8, 7, 10, 10, 9, 6}});
  FieldMatrix g2(f, {{5, 8, 4, 7, 4, 3}, {7, 4, 12, 9, 1, 10}, {2, 2, 10, 6, 10, 3}});
  FieldMatrix v_tilde(f, {{1, 3, 2, 7, 10, 12}, {3, 6, 8, 3, 12, 5}, {9, 12, 6, 5, 4, 1}});
  FieldMatrix lambda(f, {{12, 11, 3, 2, 5, 11}, {10, 9, 12, 12, 6, 10}, {4, 5, 9, 7, 2, 2}});
  FieldMatrix h(f, {{12, 4, 11, 3, 3, 2, 5, 11}, {10, 7, 9, 12, 4, 12, 6, 10}, {4, 9, 5, 9, 1, 7, 2, 2}});
  FieldMatrix g3(f, {{1, 4, 5, 9, 2, 8, 4, 11},
                     {3, 7, 10, 10, 7, 9, 10, 10},
                     {9, 9, 7, 1, 5, 2, 12, 2},
                     {1, 6, 1, 4, 11, 12, 4, 3},
                     {3, 4, 2, 3, 6, 7, 10, 11}});
  FieldMatrix e(f, {{11, 11, 1, 0, 0}, {0, 11, 11, 1, 0}, {0, 0, 11, 11, 1}});

  ScriptedRandomness script;
  script.push_permutation({5, 1, 4, 0, 3, 2});
  script.push_weighted_index(2);
  script.push_mds(g1);
  script.push_mds(g2);
  script.push_subset({0, 2, 3, 5, 6, 7});
  for (Residue x : {5, 10}) script.push_fresh_point(x);
  for (Residue x : {4, 3}) script.push_nonzero(x);
  script.push_invertible(FieldMatrix::identity(f, 5));
  // pi(1), pi(3), pi(6), pi(9), pi(11..20) = 7, 14, 2, 17, 6, 9, 3, 1, 4, 12, 8, 5, 10, 11
  script.push_permutation({6, 12, 1, 13, 5, 8, 2, 0, 3, 11, 7, 4, 9, 10});

  WorkedExample ex{"example 2 (L > S)",
                   f,
                   Demand::create(20, {2, 4, 5, 7, 8, 10}, v),
                   std::move(script),
                   {10, 4, 8, 2, 7, 5},
                   {14, 6, 13, 15, 18, 11, 1, 17, 12, 19, 20, 16, 10, 3, 4, 8, 9, 2, 7, 5},
                   block_diagonal(f, {g1, g2, g3}),
                   {}};
  ex.intermediates = {{"V~", v_tilde}, {"G_1", g1}, {"G_2", g2}, {"Lambda", lambda},
                      {"H", h},        {"G_3", g3}, {"E", e}};
  return ex;
}

struct ExampleCheck {
  std::string what;
  bool ok = false;
};

namespace detail {

inline const FieldMatrix& intermediate(const WorkedExample& ex, const std::string& name) {
  for (const auto& [key, value] : ex.intermediates)
    if (key == name) return value;
  throw Error(ErrorCode::kInvalidParameters, "unknown intermediate " + name);
}

}  // namespace detail

/// Replays the example and compares every published intermediate.
/// `x` is a message vector used for the end-to-end recovery check.
inline std::vector<ExampleCheck> replay_example(WorkedExample ex, const FieldVector& x) {
  std::vector<ExampleCheck> out;
  const QueryPlan plan = gen_query(ex.demand, ex.script);
  const ClientState& st = plan.state;
  out.push_back({"W~ order", st.ordered_support == ex.ordered_support});
  out.push_back({"V~", st.ordered_coefficients == detail::intermediate(ex, "V~")});
  out.push_back({"query matrix G", plan.query.g == ex.g});

  std::vector<std::size_t> order(plan.query.pi.size());
  for (std::size_t l = 0; l < plan.query.pi.size(); ++l) order[plan.query.pi[l] - 1] = l + 1;
  out.push_back({"permuted messages X~", order == ex.permuted_order});

  if (const auto* coded = std::get_if<CodedRecovery>(&st.recovery)) {
    const FieldMatrix& vt = st.ordered_coefficients;
    out.push_back({"parity-check Lambda", parity_check(vt) == detail::intermediate(ex, "Lambda")});
    const FieldMatrix& h = detail::intermediate(ex, "H");
    out.push_back({"G_3 from H", generator_from_parity(h) == detail::intermediate(ex, "G_3")});
    out.push_back({"combiner E", coded->combiner == detail::intermediate(ex, "E")});
  }
  if (const auto* aligned = std::get_if<AlignedRecovery>(&st.recovery)) {
    const FieldMatrix& g2 = detail::intermediate(ex, "G_2");
    const FieldMatrix& c1 = detail::intermediate(ex, "C_1");
    out.push_back({"2 C_1 block", g2.block(0, 0, 3, 4) == c1.scaled(2)});
    out.push_back({"c = (4, 9)", aligned->coefficients == std::vector<Residue>{4, 9}});
    out.push_back({"alpha = (2, 10, 3)", aligned->alpha == std::vector<Residue>{2, 10, 3}});
  }

  const Answer ans = answer(plan.query, x);
  out.push_back({"recovered Z = V X_W", recover(ans, st) == evaluate_demand(ex.demand, x)});
  out.push_back({"script fully consumed", ex.script.exhausted()});
  return out;
}

}  // namespace plt
