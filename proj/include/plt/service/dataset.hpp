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
#include <fstream>
#include <sstream>
#include <string>

#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/matrix.hpp"
#include "plt/mds.hpp"

namespace plt::service {

/// K messages over F_p at rest. Text form: "p K" then K residues.
struct Dataset {
  PrimeField field;
  FieldVector messages;

  std::size_t k() const noexcept { return messages.size(); }
};

inline Dataset parse_dataset(const std::string& text) {
  std::istringstream in(text);
  std::int64_t p = 0, k = 0;
  if (!(in >> p >> k) || k < 1) throw Error(ErrorCode::kInvalidParameters, "dataset header must be \"p K\"");
  const PrimeField f(static_cast<std::uint64_t>(p));
  FieldVector x(f, static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::int64_t v = 0;
    if (!(in >> v)) throw Error(ErrorCode::kInvalidParameters, "dataset has fewer than K residues");
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.modulus()) {
      throw Error(ErrorCode::kInvalidParameters, "dataset residue out of range: " + std::to_string(v));
    }
    x[i] = static_cast<Residue>(v);
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::kInvalidParameters, "dataset has more than K residues");
  return Dataset{f, std::move(x)};
}

inline std::string format_dataset(const Dataset& ds) {
  std::ostringstream out;
  out << ds.field.modulus() << ' ' << ds.k() << '\n';
  for (std::size_t i = 0; i < ds.k(); ++i) out << (i ? " " : "") << ds.messages[i];
  out << '\n';
  return out.str();
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidParameters, "cannot open dataset " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidParameters, "cannot write dataset " + path);
  out << format_dataset(ds);
}

/// Uniform messages from a seeded generator.
inline Dataset generate_dataset(std::size_t k, std::uint64_t p, std::uint64_t seed) {
  const PrimeField f(p);
  SeededRandomness rnd(seed);
  FieldVector x(f, k);
  for (std::size_t i = 0; i < k; ++i) x[i] = rnd.element(f);
  return Dataset{f, std::move(x)};
}

}  // namespace plt::service
