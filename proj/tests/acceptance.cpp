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

// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "plt/service/client.hpp"
#include "plt/service/dataset.hpp"
#include "plt/service/server.hpp"
#include "test_util.hpp"

using namespace plt;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && secs > budget_s) {
    out.ok = false;
    out.detail += " (over time budget)";
  }
  if (!out.ok) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << " [" << timing << "] "
            << out.detail << std::endl;
}

Demand random_demand(std::size_t k, std::size_t d, std::size_t l, const PrimeField& f, Randomness& rnd) {
  auto support = rnd.subset(k, d);
  for (auto& w : support) ++w;
  return Demand::create(k, support, rnd.mds(l, d, f));
}

Outcome replay(WorkedExample (*make)(), std::uint64_t seed) {
  SeededRandomness rnd(seed);
  const WorkedExample ex = make();
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = testutil::uniform_vector(ex.field, ex.demand.k, rnd);
    for (const auto& check : replay_example(ex, x))
      if (!check.ok) return {false, "mismatch: " + check.what};
  }
  return {true, "G bit-exact, all intermediates equal, 100 random X recovered"};
}

}  // namespace

int main() {
  criterion(1, "golden replay of example 1", 1.0, [] { return replay(worked_example_1, 1); });

  criterion(2, "golden replay of example 2", 1.0, [] {
    auto out = replay(worked_example_2, 2);
    if (!out.ok) return out;
    const auto ex = worked_example_2();
    const auto& e = ex.intermediates.back().second;
    const std::vector<std::size_t> h{0, 2, 3, 5, 6, 7};
    const bool pattern = e * ex.intermediates[5].second == spread_columns(ex.intermediates[0].second, 8, h);
    return Outcome{pattern, out.detail + "; E G_3 = V~ on h, 0 elsewhere"};
  });

  criterion(3, "rate attainment, K <= 24, p = 101", 30.0, [] {
    const PrimeField f(101);
    std::size_t instances = 0;
    for (std::size_t k = 1; k <= 24; ++k)
      for (std::size_t d = 1; d <= k; ++d)
        for (std::size_t l = 1; l <= d; ++l) {
          SeededRandomness rnd(k * 10007 + d * 101 + l);
          const auto plan = gen_query(random_demand(k, d, l, f, rnd), rnd);
          const auto b = compute_bounds(static_cast<std::int64_t>(k), static_cast<std::int64_t>(d),
                                        static_cast<std::int64_t>(l));
          const Rational rate(static_cast<std::int64_t>(l), static_cast<std::int64_t>(plan.query.g.rows()));
          if (rate != b.lower || !matches_layout(plan.query.g, plan.state.layout)) {
            return Outcome{false, "K=" + std::to_string(k) + " D=" + std::to_string(d) + " L=" + std::to_string(l)};
          }
          ++instances;
        }
    return Outcome{true, std::to_string(instances) + " instances, L/rows(G) = lower bound"};
  });

  criterion(4, "converse oracle agreement, K <= 30", 60.0, [] {
    std::size_t instances = 0;
    for (std::int64_t k = 1; k <= 30; ++k)
      for (std::int64_t d = 1; d <= k; ++d)
        for (std::int64_t l = 1; l <= d; ++l) {
          const auto value = ilp_converse_oracle(k, d, l).value;
          if (value != closed_form_converse(k, d, l) || value != l * (k / d) + std::min(l, k % d) ||
              value != oracle::converse_dp(k, d, l)) {
            return Outcome{false, "K=" + std::to_string(k) + " D=" + std::to_string(d) + " L=" + std::to_string(l)};
          }
          ++instances;
        }
    return Outcome{true, std::to_string(instances) + " instances, exhaustive = closed form = DP"};
  });

  criterion(5, "tightness classification, K <= 30", 0, [] {
    std::size_t tight = 0, loose = 0;
    for (std::int64_t k = 1; k <= 30; ++k)
      for (std::int64_t d = 1; d <= k; ++d)
        for (std::int64_t l = 1; l <= d; ++l) {
          const auto b = compute_bounds(k, d, l);
          const std::int64_t r = k % d;
          const bool rule = r <= l || r == 0 || d % r == 0;
          if (rule != (b.lower == b.upper) || (!rule && !(b.lower < b.upper))) {
            return Outcome{false, "K=" + std::to_string(k) + " D=" + std::to_string(d) + " L=" + std::to_string(l)};
          }
          (rule ? tight : loose) += 1;
        }
    return Outcome{true, std::to_string(tight) + " tight, " + std::to_string(loose) + " strictly loose"};
  });

  criterion(6, "recoverability fuzz", 60.0, [] {
    const auto grid = parameter_grid(20, 13);
    const std::size_t per_cell = (1000 + grid.size() - 1) / grid.size();
    const auto rep = recoverability_fuzz(grid, per_cell, 13, 2024);
    std::ostringstream os;
    os << rep.sessions << " sessions over " << grid.size() << " cells, branches plain/aligned/coded = "
       << rep.plain_branch << '/' << rep.aligned_branch << '/' << rep.coded_branch << ", failures " << rep.failures;
    for (const auto& row : rep.rows)
      if (row.failures) {
        os << "; first: " << row.first_failure;
        break;
      }
    const bool ok = rep.passed() && rep.sessions >= 1000 && rep.plain_branch && rep.aligned_branch && rep.coded_branch;
    return Outcome{ok, os.str()};
  });

  criterion(7, "structural posterior uniform", 0, [] {
    const PrimeField f(13);
    std::size_t queries = 0;
    for (auto [k, d, l] : {std::tuple<std::size_t, std::size_t, std::size_t>{20, 8, 3}, {20, 6, 3}}) {
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        SeededRandomness rnd(seed);
        const auto plan = gen_query(random_demand(k, d, l, f, rnd), rnd);
        for (const auto& q : structural_posterior(plan.state.layout, plan.query.pi))
          if (q != Rational(static_cast<std::int64_t>(d), static_cast<std::int64_t>(k))) {
            return Outcome{false, "non-uniform posterior " + to_string(q)};
          }
        ++queries;
      }
    }
    return Outcome{true, std::to_string(queries) + " queries (200 per case), every entry = D/K"};
  });

  criterion(8, "Monte Carlo privacy audit, 10^6 trials", 0, [] {
    std::ostringstream os;
    bool ok = true;
    for (auto [k, d, l] : {std::tuple<std::size_t, std::size_t, std::size_t>{5, 2, 1}, {7, 3, 2}}) {
      AuditConfig cfg;
      cfg.k = k;
      cfg.d = d;
      cfg.l = l;
      cfg.trials = 1'000'000;
      cfg.seed = 20260;
      const auto rep = monte_carlo_audit(cfg);
      ok = ok && rep.max_deviation <= 0.02 && rep.max_tv <= 0.02;
      os << "(" << k << "," << d << "," << l << "): dev=" << rep.max_deviation << " tv=" << rep.max_tv
         << " flagged=" << rep.flagged_cells << "/" << rep.cells << "  ";
    }
    return Outcome{ok, os.str()};
  });

  criterion(9, "algebra suite", 30.0, [] {
    const PrimeField f(13);
    std::size_t instances = 0;
    for (auto [l, d, n] : {std::tuple<std::size_t, std::size_t, std::size_t>{3, 6, 8}, {2, 5, 7}, {2, 4, 6}}) {
      for (std::uint64_t seed = 0; seed < 500; ++seed) {
        SeededRandomness rnd(seed, seed % 2 ? SamplerMode::kUniformRejection : SamplerMode::kGrs);
        const auto v = rnd.mds(l, d, f);
        const auto lambda = parity_check(v);
        if (!(v * lambda.transpose()).is_zero() || rank(lambda) != d - l || !is_mds(lambda))
          return Outcome{false, "parity_check"};
        const auto pos = rnd.subset(n, d);
        const auto h = extend_pinned_mds(lambda, n, pos, rnd);
        if (h.select_columns(pos) != lambda || !is_mds(h)) return Outcome{false, "extend_pinned_mds"};
        const auto g = generator_from_parity(h);
        if (!(g * h.transpose()).is_zero() || rank(g) != n - lambda.rows() || !is_mds(g))
          return Outcome{false, "generator_from_parity"};
        ++instances;
      }
    }
    SeededRandomness rnd(5);
    std::size_t cauchy = 0;
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t t = 1; t <= 5; ++t)
        for (int rep = 0; rep < 4; ++rep) {
          if (!oracle::is_super_regular(testutil::to_mat(rnd.alignment_weights(m, t, f)), 13))
            return Outcome{false, "Cauchy matrix not super-regular"};
          ++cauchy;
        }
    return Outcome{true, std::to_string(instances) + " code instances (500 per shape), " + std::to_string(cauchy) +
                             " Cauchy matrices exhaustively super-regular"};
  });

  criterion(10, "service round trip", 5.0, [] {
    namespace svc = plt::service;
    const auto path = std::filesystem::temp_directory_path() / "plt_acceptance_dataset.txt";
    svc::save_dataset(svc::generate_dataset(20, 13, 7), path.string());
    const svc::Dataset ds = svc::load_dataset(path.string());
    svc::Server server(ds, svc::Endpoint{"127.0.0.1", 0});
    std::thread th([&] { server.run(); });
    Outcome out{true, ""};
    try {
      SeededRandomness rnd(11);
      for (auto [d, l] : {std::pair<std::size_t, std::size_t>{8, 3}, {6, 3}}) {
        const auto demand = random_demand(20, d, l, ds.field, rnd);
        const auto res = svc::retrieve(svc::Endpoint{"127.0.0.1", server.port()}, demand, rnd);
        const bool ok = res.z == evaluate_demand(demand, ds.messages) && res.download == res.layout.total_rows();
        out.ok = out.ok && ok;
        out.detail += "D=" + std::to_string(d) + " download=" + std::to_string(res.download) + " rate=" +
                      to_string(res.rate) + (ok ? " match  " : " MISMATCH  ");
      }
    } catch (...) {
      server.stop();
      th.join();
      throw;
    }
    server.stop();
    th.join();
    std::filesystem::remove(path);
    return out;
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
