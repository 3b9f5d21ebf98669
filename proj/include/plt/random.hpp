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
#include <span>
#include <vector>

#include "plt/field.hpp"
#include "plt/matrix.hpp"

namespace plt {

/// How random MDS matrices are drawn.
enum class SamplerMode {
  kGrs,                ///< GRS generator mixed by a random invertible matrix; always MDS.
  kUniformRejection,   ///< uniform matrices, rejected until MDS (small shapes only).
};

/// Source of every random choice made by the library.
///
/// Draws are named by the role they play so that a recorded run can be
/// replayed by substituting individual choices (see ScriptedRandomness).
/// Implementations must be deterministic given their seed.
class Randomness {
 public:
  virtual ~Randomness() = default;

  /// Uniform integer in [0, n). Requires n > 0.
  virtual std::size_t below(std::size_t n) = 0;
  /// Uniform residue in [0, p).
  virtual Residue element(const PrimeField& field) = 0;
  /// Uniform nonzero residue.
  virtual Residue nonzero(const PrimeField& field) = 0;
  /// Uniform residue outside `used` (evaluation or Cauchy point).
  virtual Residue fresh_point(const PrimeField& field, std::span<const Residue> used) = 0;
  /// Uniform permutation of {0, ..., n-1}.
  virtual std::vector<std::size_t> permutation(std::size_t n) = 0;
  /// Uniform k-subset of {0, ..., n-1}, ascending.
  virtual std::vector<std::size_t> subset(std::size_t n, std::size_t k) = 0;
  /// Index i drawn with probability weights[i] / sum(weights).
  virtual std::size_t weighted_index(std::span<const std::uint64_t> weights) = 0;
  /// Random MDS matrix of the given shape.
  virtual FieldMatrix mds(std::size_t rows, std::size_t cols, const PrimeField& field) = 0;
  /// m x t alignment weights; a Cauchy matrix on fresh points by default.
  virtual FieldMatrix alignment_weights(std::size_t m, std::size_t t, const PrimeField& field) = 0;
  /// Uniform invertible n x n matrix.
  virtual FieldMatrix invertible(std::size_t n, const PrimeField& field) = 0;
};

}  // namespace plt
