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
#include <cstdint>
#include <string>
#include <vector>

#include "plt/gpc_pia.hpp"
#include "plt/matrix.hpp"
#include "plt/service/dataset.hpp"
#include "plt/service/wire.hpp"

namespace plt::service {

inline QueryMsg to_wire(const Query& q) {
  QueryMsg m;
  m.p = q.g.field().modulus();
  m.k = q.pi.size();
  m.rows = q.g.rows();
  m.cols = q.g.cols();
  m.g.reserve(q.g.rows() * q.g.cols());
  for (std::size_t r = 0; r < q.g.rows(); ++r)
    for (std::size_t c = 0; c < q.g.cols(); ++c) m.g.push_back(static_cast<std::int64_t>(q.g(r, c)));
  for (auto v : q.pi) m.pi.push_back(static_cast<std::int64_t>(v));
  return m;
}

/// Checks a query against the dataset and builds the typed Query.
/// Throws WireError with FIELD_MISMATCH, SHAPE_MISMATCH, OUT_OF_RANGE or
/// BAD_PERMUTATION.
inline Query from_wire(const QueryMsg& m, const Dataset& ds) {
  const PrimeField& f = ds.field;
  if (m.p != f.modulus()) {
    throw WireError(wire_code::kFieldMismatch,
                    "query is over F_" + std::to_string(m.p) + ", dataset over F_" + std::to_string(f.modulus()));
  }
  if (m.k != ds.k() || m.cols != ds.k()) {
    throw WireError(wire_code::kShapeMismatch, "query declares k=" + std::to_string(m.k) + " cols=" +
                                                   std::to_string(m.cols) + ", dataset has " +
                                                   std::to_string(ds.k()) + " messages");
  }
  if (m.rows == 0 || m.g.size() != m.rows * m.cols) {
    throw WireError(wire_code::kShapeMismatch, "g has " + std::to_string(m.g.size()) + " entries, expected rows*cols");
  }
  if (m.pi.size() != m.k) throw WireError(wire_code::kShapeMismatch, "pi must have k entries");
  std::vector<Residue> entries;
  entries.reserve(m.g.size());
  for (auto v : m.g) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.modulus()) {
      throw WireError(wire_code::kOutOfRange, "g entry " + std::to_string(v) + " is not reduced mod p");
    }
    entries.push_back(static_cast<Residue>(v));
  }
  std::vector<std::size_t> pi;
  pi.reserve(m.pi.size());
  for (auto v : m.pi) pi.push_back(v < 1 ? 0 : static_cast<std::size_t>(v));
  if (!is_permutation_of(pi, ds.k())) throw WireError(wire_code::kBadPermutation, "pi is not a bijection on 1..k");
  return Query{FieldMatrix(f, m.rows, m.cols, std::move(entries)), std::move(pi)};
}

inline AnswerMsg to_wire(const Answer& a) {
  AnswerMsg m;
  for (std::size_t i = 0; i < a.y.size(); ++i) m.y.push_back(static_cast<std::int64_t>(a.y[i]));
  return m;
}

/// Server side of one request line: the reply line (answer or error).
inline std::string handle_line(const Dataset& ds, const std::string& line) {
  try {
    const WireMessage msg = decode(line);
    const auto* q = std::get_if<QueryMsg>(&msg);
    if (!q) throw WireError(wire_code::kBadMessage, "server only accepts query messages");
    return encode(to_wire(answer(from_wire(*q, ds), ds.messages)));
  } catch (const WireError& e) {
    return encode(ErrorMsg{e.code(), e.detail()});
  } catch (const std::exception& e) {
    return encode(ErrorMsg{wire_code::kBadMessage, e.what()});
  }
}

}  // namespace plt::service
