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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "plt/plt.hpp"
#include "plt/service/client.hpp"
#include "plt/service/dataset.hpp"
#include "plt/service/server.hpp"

namespace {

using namespace plt;

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidParameters, "not an integer: " + item);
    }
  }
  return out;
}

// "a,b,c;d,e,f" -> rows
std::vector<std::vector<std::int64_t>> parse_rows(const std::string& text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::stringstream in(text);
  std::string row;
  while (std::getline(in, row, ';')) rows.push_back(parse_list(row));
  if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::kInvalidParameters, "empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw Error(ErrorCode::kInvalidParameters, "ragged matrix rows");
  return rows;
}

FieldMatrix to_matrix(const PrimeField& f, const std::vector<std::vector<std::int64_t>>& rows) {
  FieldMatrix m(f, rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = f.reduce(rows[r][c]);
  return m;
}

std::string format_vector(const FieldVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

int cmd_bounds(std::int64_t k, std::int64_t d, std::int64_t l) {
  const CapacityBounds b = compute_bounds(k, d, l);
  std::cout << "R=" << b.r << " S=" << b.s << " lower=" << to_string(b.lower) << " upper=" << to_string(b.upper)
            << " tight=" << (b.tight ? "yes" : "no") << '\n';
  return 0;
}

int cmd_ilp(std::int64_t k, std::int64_t d, std::int64_t l) {
  const IlpSolution sol = ilp_converse_oracle(k, d, l);
  const std::int64_t closed = closed_form_converse(k, d, l);
  std::cout << "value=" << sol.value << " closed_form=" << closed << " witness";
  for (std::size_t j = 0; j < sol.counts.size(); ++j)
    if (sol.counts[j]) std::cout << " T_" << j + 1 << '=' << sol.counts[j];
  std::cout << '\n';
  return sol.value == closed ? 0 : 1;
}

int cmd_demo(int which, std::uint64_t seed) {
  WorkedExample ex = which == 1 ? worked_example_1() : worked_example_2();
  SeededRandomness rnd(seed);
  FieldVector x(ex.field, ex.demand.k);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rnd.element(ex.field);
  std::cout << ex.name << " over F_" << ex.field.modulus() << "\n\nG =\n" << ex.g << '\n';
  bool ok = true;
  for (const auto& check : replay_example(ex, x)) {
    std::cout << (check.ok ? "  ok    " : "  FAIL  ") << check.what << '\n';
    ok = ok && check.ok;
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

struct RetrieveOptions {
  std::string connect;
  std::string w;
  std::string v;
  bool random_mds = false;
  std::int64_t l = 0;
  std::int64_t d = 0;
  std::uint64_t seed = 1;
  std::string check_dataset;
};

int cmd_retrieve(const RetrieveOptions& o) {
  // everything that does not need the server is checked first
  std::vector<std::size_t> support;
  if (!o.w.empty()) {
    for (auto v : parse_list(o.w)) {
      if (v < 1) throw Error(ErrorCode::kInvalidParameters, "support indices are 1-based");
      support.push_back(static_cast<std::size_t>(v));
    }
    std::sort(support.begin(), support.end());
  }
  std::vector<std::vector<std::int64_t>> rows;
  if (!o.v.empty()) rows = parse_rows(o.v);
  if (o.v.empty() == !o.random_mds) throw Error(ErrorCode::kInvalidParameters, "give exactly one of --v, --random-mds");
  if (support.empty() && o.d == 0) throw Error(ErrorCode::kInvalidParameters, "give --w or --d");
  if (!support.empty() && o.d != 0 && support.size() != static_cast<std::size_t>(o.d)) {
    throw Error(ErrorCode::kInvalidParameters, "|W| = " + std::to_string(support.size()) + " but D = " +
                                                   std::to_string(o.d));
  }
  const std::size_t d = support.empty() ? static_cast<std::size_t>(o.d) : support.size();
  if (!rows.empty() && rows.front().size() != d) {
    throw Error(ErrorCode::kInvalidParameters, "V has " + std::to_string(rows.front().size()) + " columns, D = " +
                                                   std::to_string(d));
  }
  const std::size_t l = rows.empty() ? static_cast<std::size_t>(o.l) : rows.size();
  if (l < 1 || l > d) throw Error(ErrorCode::kInvalidParameters, "need 1 <= L <= D");

  const service::Endpoint ep = o.connect.empty() ? service::default_endpoint() : service::parse_endpoint(o.connect);
  service::Client client(ep);
  const PrimeField f(client.p());
  SeededRandomness rnd(o.seed);
  if (support.empty()) {
    if (d > client.k()) throw Error(ErrorCode::kInvalidParameters, "D exceeds K");
    support = rnd.subset(client.k(), d);
    for (auto& w : support) ++w;
  }
  FieldMatrix v = rows.empty() ? rnd.mds(l, d, f) : to_matrix(f, rows);
  const Demand demand = Demand::create(client.k(), support, std::move(v));
  const service::RetrieveResult res = client.retrieve(demand, rnd);

  std::cout << "W=[";
  for (std::size_t j = 0; j < support.size(); ++j) std::cout << (j ? "," : "") << support[j];
  std::cout << "]\nV=\n" << demand.coefficients;
  std::cout << "Z=" << format_vector(res.z) << '\n'
            << "download=" << res.download << '\n'
            << "rate=" << to_string(res.rate) << " lower=" << to_string(res.bounds.lower)
            << " upper=" << to_string(res.bounds.upper) << '\n';
  if (!o.check_dataset.empty()) {
    const service::Dataset ds = service::load_dataset(o.check_dataset);
    const bool match = ds.field == f && ds.k() == demand.k && evaluate_demand(demand, ds.messages) == res.z;
    std::cout << "oracle=" << (match ? "match" : "MISMATCH") << '\n';
    if (!match) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private linear transformation: bounds, protocol simulator and audit"};
  app.require_subcommand(1);

  std::int64_t k = 0, d = 0, l = 0;
  auto* bounds = app.add_subcommand("bounds", "capacity lower/upper bounds");
  bounds->add_option("--k", k, "messages K")->required();
  bounds->add_option("--d", d, "support size D")->required();
  bounds->add_option("--l", l, "combinations L")->required();

  auto* ilp = app.add_subcommand("ilp-oracle", "exhaustive converse program vs closed form");
  ilp->add_option("--k", k)->required();
  ilp->add_option("--d", d)->required();
  ilp->add_option("--l", l)->required();

  std::uint64_t p = 13, seed = 1;
  std::string out_path;
  auto* gen = app.add_subcommand("gen-dataset", "write K uniform messages over F_p");
  gen->add_option("--k", k)->required();
  gen->add_option("--p", p)->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out_path, "output file (default stdout)");

  std::string dataset_path, listen;
  std::size_t max_sessions = 0;
  bool verbose = false;
  auto* serve = app.add_subcommand("serve", "answer queries over TCP");
  serve->add_option("--dataset", dataset_path)->required();
  serve->add_option("--listen", listen, std::string("host:port (default $") + service::kListenEnv + " or " +
                                            service::kDefaultListen + ")");
  serve->add_option("--max-sessions", max_sessions, "exit after this many connections (0: never)");
  serve->add_flag("--verbose", verbose);

  RetrieveOptions ro;
  auto* retrieve = app.add_subcommand("retrieve", "privately compute V X_W from a server");
  retrieve->add_option("--connect", ro.connect, "host:port");
  retrieve->add_option("--w", ro.w, "support, e.g. 2,4,5");
  retrieve->add_option("--v", ro.v, "coefficients, rows split by ';'");
  retrieve->add_flag("--random-mds", ro.random_mds, "draw V at random");
  retrieve->add_option("--l", ro.l);
  retrieve->add_option("--d", ro.d);
  retrieve->add_option("--seed", ro.seed)->capture_default_str();
  retrieve->add_option("--check-dataset", ro.check_dataset, "compare Z with V X_W from this file");

  AuditConfig ac;
  bool json = false;
  auto* audit = app.add_subcommand("audit", "Monte Carlo privacy audit");
  audit->add_option("--k", ac.k)->capture_default_str();
  audit->add_option("--d", ac.d)->capture_default_str();
  audit->add_option("--l", ac.l)->capture_default_str();
  audit->add_option("--trials", ac.trials)->capture_default_str();
  audit->add_option("--p", ac.prime)->capture_default_str();
  audit->add_option("--seed", ac.seed)->capture_default_str();
  audit->add_option("--threads", ac.threads, "0: all cores");
  audit->add_option("--min-cell", ac.min_cell_count)->capture_default_str();
  audit->add_flag("--json", json);

  int example = 1;
  auto* demo = app.add_subcommand("demo", "replay a worked example");
  demo->add_option("--example", example)->required()->check(CLI::IsMember({1, 2}));
  demo->add_option("--seed", seed, "seed for the random message vector")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bounds) return cmd_bounds(k, d, l);
    if (*ilp) return cmd_ilp(k, d, l);
    if (*gen) {
      const auto ds = service::generate_dataset(static_cast<std::size_t>(k), p, seed);
      if (out_path.empty()) std::cout << service::format_dataset(ds);
      else service::save_dataset(ds, out_path);
      return 0;
    }
    if (*serve) {
      const service::Endpoint ep = listen.empty() ? service::default_endpoint() : service::parse_endpoint(listen);
      service::Server server(service::load_dataset(dataset_path), ep, verbose ? &std::cerr : nullptr);
      std::cout << "listening on " << ep.host << ':' << server.port() << std::endl;
      server.run(max_sessions);
      return 0;
    }
    if (*retrieve) return cmd_retrieve(ro);
    if (*audit) {
      const AuditReport rep = monte_carlo_audit(ac);
      std::cout << (json ? rep.to_json().dump(2) + "\n" : rep.to_text());
      return 0;
    }
    if (*demo) return cmd_demo(example, seed);
  } catch (const service::WireError& e) {
    std::cerr << "error " << e.code() << ": " << e.detail() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
