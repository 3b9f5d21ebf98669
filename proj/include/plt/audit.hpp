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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "plt/bounds.hpp"
#include "plt/error.hpp"
#include "plt/field.hpp"
#include "plt/gpc_pia.hpp"
#include "plt/mds.hpp"

namespace plt {

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

/// Pr(i in W | G, pi) for every index i, by Bayes over the supports the
/// generation model could have used to produce pi.
///
/// Every hypothesis shares the prior 1/C(K,D) and the factors 1/D! and
/// 1/(K-D)! of the filler, so only the block-selection weight survives:
/// D/K for each of the first n blocks, and (D+R)/K split evenly over the
/// placements the last block allows.
inline std::vector<Rational> structural_posterior(const BlockLayout& lay, std::span<const std::size_t> pi) {
  if (!is_permutation_of(pi, lay.k)) throw Error(ErrorCode::kShapeError, "pi is not a permutation of 1..K");
  const auto k = static_cast<std::int64_t>(lay.k);
  const auto d = static_cast<std::int64_t>(lay.d);
  const auto width = static_cast<std::int64_t>(lay.last_cols);

  // placements inside the last block, and how many of them cover one column
  std::int64_t placements = 1, covering = 1;
  if (lay.kind == LayoutCase::kAligned) {
    const auto units = static_cast<std::int64_t>(lay.t + lay.m);
    const auto chosen = static_cast<std::int64_t>(lay.t + 1);
    placements = binomial(units, chosen);
    covering = binomial(units - 1, chosen - 1);
  } else {
    placements = binomial(width, d);
    covering = binomial(width - 1, d - 1);
  }

  const Rational per_plain(d, k);
  const Rational per_placement = Rational(width, k) / placements;
  const Rational total = per_plain * static_cast<std::int64_t>(lay.n) + per_placement * placements;

  std::vector<Rational> out(lay.k);
  for (std::size_t i = 0; i < lay.k; ++i) {
    const std::size_t block = lay.block_of_column(pi[i]);
    const Rational mass = block <= lay.n ? per_plain : per_placement * covering;
    out[i] = mass / total;
  }
  return out;
}

struct AuditConfig {
  std::size_t k = 5;
  std::size_t d = 2;
  std::size_t l = 1;
  std::uint64_t trials = 1'000'000;
  std::uint64_t prime = 13;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t min_cell_count = 1000;
  SamplerMode mode = SamplerMode::kGrs;
};

struct AuditReport {
  AuditConfig config;
  double target = 0;                // D/K
  double max_deviation = 0;         // over (i, sigma) with enough samples
  std::size_t worst_index = 0;      // 1-based
  std::string worst_cell;
  std::vector<double> per_index_tv;
  double max_tv = 0;
  std::size_t cells = 0;
  std::size_t flagged_cells = 0;    // below min_cell_count, excluded from max_deviation

  nlohmann::json to_json() const {
    return {{"k", config.k},
            {"d", config.d},
            {"l", config.l},
            {"trials", config.trials},
            {"p", config.prime},
            {"seed", config.seed},
            {"target", target},
            {"max_deviation", max_deviation},
            {"worst_index", worst_index},
            {"worst_cell", worst_cell},
            {"per_index_tv", per_index_tv},
            {"max_tv", max_tv},
            {"cells", cells},
            {"flagged_cells", flagged_cells}};
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "K=" << config.k << " D=" << config.d << " L=" << config.l << " trials=" << config.trials
       << " p=" << config.prime << " seed=" << config.seed << '\n'
       << "target D/K=" << target << '\n'
       << "max |P(i in W | sigma) - D/K| = " << max_deviation << " (index " << worst_index << ", cell "
       << worst_cell << ")\n"
       << "max TV = " << max_tv << '\n'
       << "cells=" << cells << " flagged=" << flagged_cells << '\n';
    for (std::size_t i = 0; i < per_index_tv.size(); ++i) os << "  tv[" << i + 1 << "]=" << per_index_tv[i] << '\n';
    return os.str();
  }
};

namespace detail {

struct AuditCell {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> hits;  // per index: trials with i in W
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kAuditChunk = 4096;

}  // namespace detail

/// Samples (W, V) uniformly, runs gen_query and tabulates the block of pi(i)
/// for every i. Trials run in fixed chunks with seeds derived from the
/// master seed, so the result does not depend on the thread count.
inline AuditReport monte_carlo_audit(const AuditConfig& cfg) {
  const BlockLayout lay = make_layout(cfg.k, cfg.d, cfg.l);
  if (cfg.k > 8) throw Error(ErrorCode::kInstanceTooLarge, "audit needs K <= 8");
  const PrimeField f(cfg.prime);
  if (lay.last_cols >= f.modulus()) throw Error(ErrorCode::kFieldTooSmall, "need p > D + R");

  const std::uint64_t chunks = (cfg.trials + detail::kAuditChunk - 1) / detail::kAuditChunk;
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  std::map<std::uint64_t, detail::AuditCell> merged;
  std::vector<std::uint64_t> in_w_total(cfg.k, 0);
  std::mutex mu;

  auto worker = [&](unsigned id) {
    std::map<std::uint64_t, detail::AuditCell> local;
    std::vector<std::uint64_t> local_in_w(cfg.k, 0);
    std::vector<bool> member(cfg.k);
    for (std::uint64_t chunk = id; chunk < chunks; chunk += threads) {
      SeededRandomness rnd(detail::splitmix64(cfg.seed ^ detail::splitmix64(chunk)), cfg.mode);
      const std::uint64_t begin = chunk * detail::kAuditChunk;
      const std::uint64_t end = std::min(cfg.trials, begin + detail::kAuditChunk);
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        std::vector<std::size_t> support = rnd.subset(cfg.k, cfg.d);
        for (auto& w : support) ++w;
        Demand demand{cfg.k, support, rnd.mds(cfg.l, cfg.d, f)};
        const QueryPlan plan = gen_query(demand, rnd);
        std::uint64_t key = 0;
        for (std::size_t i = cfg.k; i-- > 0;) key = key * (lay.n + 1) + (lay.block_of_column(plan.query.pi[i]) - 1);
        auto& cell = local[key];
        if (cell.hits.empty()) cell.hits.assign(cfg.k, 0);
        ++cell.count;
        std::fill(member.begin(), member.end(), false);
        for (auto w : support) member[w - 1] = true;
        for (std::size_t i = 0; i < cfg.k; ++i)
          if (member[i]) {
            ++cell.hits[i];
            ++local_in_w[i];
          }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    for (auto& [key, cell] : local) {
      auto& dst = merged[key];
      if (dst.hits.empty()) dst.hits.assign(cfg.k, 0);
      dst.count += cell.count;
      for (std::size_t i = 0; i < cfg.k; ++i) dst.hits[i] += cell.hits[i];
    }
    for (std::size_t i = 0; i < cfg.k; ++i) in_w_total[i] += local_in_w[i];
  };

  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& th : pool) th.join();

  AuditReport rep;
  rep.config = cfg;
  rep.target = static_cast<double>(cfg.d) / static_cast<double>(cfg.k);
  rep.cells = merged.size();
  auto cell_name = [&](std::uint64_t key) {
    std::string s;
    for (std::size_t i = 0; i < cfg.k; ++i) {
      s += std::to_string(key % (lay.n + 1) + 1);
      key /= lay.n + 1;
    }
    return s;
  };
  for (const auto& [key, cell] : merged) {
    if (cell.count < cfg.min_cell_count) {
      ++rep.flagged_cells;
      continue;
    }
    for (std::size_t i = 0; i < cfg.k; ++i) {
      const double est = static_cast<double>(cell.hits[i]) / static_cast<double>(cell.count);
      const double dev = std::abs(est - rep.target);
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_index = i + 1;
        rep.worst_cell = cell_name(key);
      }
    }
  }
  rep.per_index_tv.assign(cfg.k, 0.0);
  for (std::size_t i = 0; i < cfg.k; ++i) {
    const double in = static_cast<double>(in_w_total[i]);
    const double out = static_cast<double>(cfg.trials) - in;
    if (in == 0 || out == 0) continue;
    double tv = 0;
    for (const auto& [key, cell] : merged) {
      const double hit = static_cast<double>(cell.hits[i]);
      const double miss = static_cast<double>(cell.count) - hit;
      tv += std::abs(hit / in - miss / out);
    }
    rep.per_index_tv[i] = tv / 2;
    rep.max_tv = std::max(rep.max_tv, rep.per_index_tv[i]);
  }
  return rep;
}

struct GridCell {
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t l = 0;
};

/// Every (K, D, L) with 1 <= L <= D <= K <= max_k that fits F_p (p > D + R).
inline std::vector<GridCell> parameter_grid(std::size_t max_k, std::uint64_t prime) {
  std::vector<GridCell> out;
  for (std::size_t k = 1; k <= max_k; ++k)
    for (std::size_t d = 1; d <= k; ++d)
      for (std::size_t l = 1; l <= d; ++l)
        if (d + k % d < prime) out.push_back({k, d, l});
  return out;
}

struct FuzzRow {
  GridCell cell;
  std::size_t sessions = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct FuzzReport {
  std::vector<FuzzRow> rows;
  std::size_t sessions = 0;
  std::size_t failures = 0;
  std::size_t plain_branch = 0;    // i* <= n
  std::size_t aligned_branch = 0;  // last block, L <= S
  std::size_t coded_branch = 0;    // last block, L > S

  bool passed() const noexcept { return failures == 0; }
};

/// Runs seeds_per_cell random sessions per grid cell and compares the
/// recovered demand with V X_W evaluated directly.
inline FuzzReport recoverability_fuzz(std::span<const GridCell> grid, std::size_t seeds_per_cell, std::uint64_t prime,
                                      std::uint64_t seed = 1) {
  const PrimeField f(prime);
  FuzzReport rep;
  std::uint64_t session_id = 0;
  for (const auto& cell : grid) {
    FuzzRow row{cell, 0, 0, {}};
    for (std::size_t q = 0; q < seeds_per_cell; ++q, ++session_id) {
      const std::uint64_t session_seed = detail::splitmix64(seed ^ detail::splitmix64(session_id));
      SeededRandomness rnd(session_seed);
      ++row.sessions;
      std::string failure;
      try {
        std::vector<std::size_t> support = rnd.subset(cell.k, cell.d);
        for (auto& w : support) ++w;
        const Demand demand = Demand::create(cell.k, support, rnd.mds(cell.l, cell.d, f));
        FieldVector x(f, cell.k);
        for (std::size_t i = 0; i < cell.k; ++i) x[i] = rnd.element(f);
        const QueryPlan plan = gen_query(demand, rnd);
        if (plan.state.selected_block <= plan.state.layout.n) ++rep.plain_branch;
        else if (plan.state.layout.kind == LayoutCase::kAligned) ++rep.aligned_branch;
        else ++rep.coded_branch;
        if (!matches_layout(plan.query.g, plan.state.layout)) failure = "G does not match the layout";
        else if (recover(answer(plan.query, x), plan.state) != evaluate_demand(demand, x)) failure = "Z mismatch";
      } catch (const std::exception& e) {
        failure = e.what();
      }
      if (!failure.empty()) {
        ++row.failures;
        if (row.first_failure.empty()) row.first_failure = "seed " + std::to_string(session_seed) + ": " + failure;
      }
    }
    rep.sessions += row.sessions;
    rep.failures += row.failures;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace plt
