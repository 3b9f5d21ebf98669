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
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/matrix.hpp"
#include "plt/mds.hpp"
#include "plt/random.hpp"

namespace plt {

/// Randomness that returns queued values first and falls back to a seeded
/// generator once a queue runs dry. Used to replay worked examples.
class ScriptedRandomness : public Randomness {
 public:
  explicit ScriptedRandomness(std::uint64_t seed = 0, SamplerMode mode = SamplerMode::kGrs) : fallback_(seed, mode) {}

  ScriptedRandomness& push_permutation(std::vector<std::size_t> v) { return push(permutations_, std::move(v)); }
  ScriptedRandomness& push_subset(std::vector<std::size_t> v) { return push(subsets_, std::move(v)); }
  ScriptedRandomness& push_weighted_index(std::size_t v) { return push(weighted_, v); }
  ScriptedRandomness& push_mds(FieldMatrix v) { return push(mds_, std::move(v)); }
  ScriptedRandomness& push_alignment_weights(FieldMatrix v) { return push(weights_, std::move(v)); }
  ScriptedRandomness& push_invertible(FieldMatrix v) { return push(invertible_, std::move(v)); }
  ScriptedRandomness& push_fresh_point(Residue v) { return push(points_, v); }
  ScriptedRandomness& push_nonzero(Residue v) { return push(nonzeros_, v); }

  /// True when every queued value has been consumed.
  bool exhausted() const noexcept {
    return permutations_.empty() && subsets_.empty() && weighted_.empty() && mds_.empty() && weights_.empty() &&
           invertible_.empty() && points_.empty() && nonzeros_.empty();
  }

  std::size_t below(std::size_t n) override { return fallback_.below(n); }
  Residue element(const PrimeField& f) override { return fallback_.element(f); }

  Residue nonzero(const PrimeField& f) override {
    if (nonzeros_.empty()) return fallback_.nonzero(f);
    const Residue v = pop(nonzeros_);
    if (v == 0 || v >= f.modulus()) throw Error(ErrorCode::kInvalidParameters, "scripted nonzero out of range");
    return v;
  }

  Residue fresh_point(const PrimeField& f, std::span<const Residue> used) override {
    if (points_.empty()) return fallback_.fresh_point(f, used);
    const Residue v = pop(points_);
    if (v >= f.modulus() || std::find(used.begin(), used.end(), v) != used.end()) {
      throw Error(ErrorCode::kDegeneratePoints, "scripted point " + std::to_string(v) + " is already in use");
    }
    return v;
  }

  std::vector<std::size_t> permutation(std::size_t n) override {
    if (permutations_.empty()) return fallback_.permutation(n);
    auto v = pop(permutations_);
    std::vector<std::size_t> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) throw Error(ErrorCode::kInvalidParameters, "scripted permutation is not a bijection");
    }
    if (v.size() != n) throw Error(ErrorCode::kShapeError, "scripted permutation has the wrong length");
    return v;
  }

  std::vector<std::size_t> subset(std::size_t n, std::size_t k) override {
    if (subsets_.empty()) return fallback_.subset(n, k);
    auto v = pop(subsets_);
    if (v.size() != k || !std::is_sorted(v.begin(), v.end()) || (k > 0 && v.back() >= n) ||
        std::adjacent_find(v.begin(), v.end()) != v.end()) {
      throw Error(ErrorCode::kShapeError, "scripted subset does not fit");
    }
    return v;
  }

  std::size_t weighted_index(std::span<const std::uint64_t> weights) override {
    if (weighted_.empty()) return fallback_.weighted_index(weights);
    const std::size_t v = pop(weighted_);
    if (v >= weights.size()) throw Error(ErrorCode::kShapeError, "scripted index out of range");
    return v;
  }

  FieldMatrix mds(std::size_t rows, std::size_t cols, const PrimeField& f) override {
    if (mds_.empty()) return fallback_.mds(rows, cols, f);
    return checked(pop(mds_), rows, cols);
  }

  FieldMatrix alignment_weights(std::size_t m, std::size_t t, const PrimeField& f) override {
    if (weights_.empty()) return fallback_.alignment_weights(m, t, f);
    return checked(pop(weights_), m, t);
  }

  FieldMatrix invertible(std::size_t n, const PrimeField& f) override {
    if (invertible_.empty()) return fallback_.invertible(n, f);
    return checked(pop(invertible_), n, n);
  }

 private:
  template <class Q, class V>
  ScriptedRandomness& push(Q& q, V&& v) {
    q.push_back(std::forward<V>(v));
    return *this;
  }
  template <class Q>
  static typename Q::value_type pop(Q& q) {
    auto v = std::move(q.front());
    q.pop_front();
    return v;
  }
  static FieldMatrix checked(FieldMatrix m, std::size_t rows, std::size_t cols) {
    if (m.rows() != rows || m.cols() != cols) throw Error(ErrorCode::kShapeError, "scripted matrix has the wrong shape");
    return m;
  }

  SeededRandomness fallback_;
  std::deque<std::vector<std::size_t>> permutations_;
  std::deque<std::vector<std::size_t>> subsets_;
  std::deque<std::size_t> weighted_;
  std::deque<FieldMatrix> mds_;
  std::deque<FieldMatrix> weights_;
  std::deque<FieldMatrix> invertible_;
  std::deque<Residue> points_;
  std::deque<Residue> nonzeros_;
};

}  // namespace plt
