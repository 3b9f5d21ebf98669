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

#include <gtest/gtest.h>

#include <cstdlib>
#include <thread>

#include "plt/service/client.hpp"
#include "plt/service/dataset.hpp"
#include "plt/service/server.hpp"
#include "plt/service/session.hpp"
#include "plt/service/wire.hpp"
#include "test_util.hpp"

using namespace plt;
using namespace plt::service;

namespace {

std::string error_code_of(const std::string& reply) {
  const auto msg = decode(reply);
  const auto* err = std::get_if<ErrorMsg>(&msg);
  return err ? err->code : "";
}

struct RunningServer {
  explicit RunningServer(Dataset ds) : server(std::move(ds), Endpoint{"127.0.0.1", 0}) {
    thread = std::thread([this] { server.run(); });
  }
  ~RunningServer() {
    server.stop();
    thread.join();
  }
  Endpoint endpoint() { return Endpoint{"127.0.0.1", server.port()}; }

  Server server;
  std::thread thread;
};

}  // namespace

TEST(Dataset, RoundTripAndErrors) {
  const auto ds = generate_dataset(20, 13, 7);
  EXPECT_EQ(ds.k(), 20u);
  const auto text = format_dataset(ds);
  EXPECT_EQ(text.substr(0, 6), "13 20\n");
  const auto back = parse_dataset(text);
  EXPECT_EQ(back.messages, ds.messages);
  EXPECT_EQ(generate_dataset(20, 13, 7).messages, ds.messages);
  EXPECT_THROW((void)parse_dataset("13 3\n1 2\n"), Error);
  EXPECT_THROW((void)parse_dataset("13 2\n1 2 3\n"), Error);
  EXPECT_THROW((void)parse_dataset("13 2\n1 13\n"), Error);
  EXPECT_THROW((void)parse_dataset("12 2\n1 1\n"), Error);
  EXPECT_THROW((void)parse_dataset("garbage"), Error);
}

TEST(Wire, RoundTripRandomMessages) {
  SeededRandomness rnd(3);
  for (int trial = 0; trial < 300; ++trial) {
    WireMessage msg;
    switch (trial % 4) {
      case 0: msg = HelloMsg{rnd.below(1000) + 2, rnd.below(100)}; break;
      case 1: {
        QueryMsg q{13, rnd.below(10) + 1, rnd.below(5) + 1, 0, {}, {}};
        q.cols = q.k;
        for (std::size_t i = 0; i < q.rows * q.cols; ++i) q.g.push_back(static_cast<std::int64_t>(rnd.below(13)));
        for (auto v : rnd.permutation(q.k)) q.pi.push_back(static_cast<std::int64_t>(v + 1));
        msg = q;
        break;
      }
      case 2: {
        AnswerMsg a;
        for (std::size_t i = 0; i < rnd.below(12); ++i) a.y.push_back(static_cast<std::int64_t>(rnd.below(1u << 30)));
        msg = a;
        break;
      }
      default: msg = ErrorMsg{"SHAPE_MISMATCH", "detail \"quoted\" " + std::to_string(trial)};
    }
    const auto line = encode(msg);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_EQ(decode(line), msg);
  }
}

TEST(Wire, DecodeErrors) {
  auto code = [](const std::string& line) {
    try {
      (void)decode(line);
      return std::string("ok");
    } catch (const WireError& e) {
      return e.code();
    }
  };
  EXPECT_EQ(code("{not json"), "BAD_JSON");
  EXPECT_EQ(code("[1,2]"), "BAD_MESSAGE");
  EXPECT_EQ(code("{\"type\":\"nope\"}"), "BAD_MESSAGE");
  EXPECT_EQ(code("{\"type\":\"query\",\"p\":13}"), "BAD_MESSAGE");
  EXPECT_EQ(code("{\"type\":\"answer\",\"y\":[1,\"x\"]}"), "BAD_MESSAGE");
  EXPECT_EQ(code("{\"type\":\"hello\",\"p\":-1,\"k\":2}"), "BAD_MESSAGE");
}

TEST(Session, ErrorCodes) {
  auto ex = worked_example_2();
  const auto plan = gen_query(ex.demand, ex.script);
  const Dataset ds{ex.field, generate_dataset(20, 13, 1).messages};
  const QueryMsg good = to_wire(plan.query);

  const auto ok = decode(handle_line(ds, encode(good)));
  ASSERT_TRUE(std::holds_alternative<AnswerMsg>(ok));
  EXPECT_EQ(std::get<AnswerMsg>(ok).y.size(), 11u);

  QueryMsg bad_pi = good;
  bad_pi.pi[0] = bad_pi.pi[1];
  EXPECT_EQ(error_code_of(handle_line(ds, encode(bad_pi))), "BAD_PERMUTATION");
  QueryMsg zero_pi = good;
  zero_pi.pi[0] = 0;
  EXPECT_EQ(error_code_of(handle_line(ds, encode(zero_pi))), "BAD_PERMUTATION");
  QueryMsg bad_p = good;
  bad_p.p = 17;
  EXPECT_EQ(error_code_of(handle_line(ds, encode(bad_p))), "FIELD_MISMATCH");
  QueryMsg bad_shape = good;
  bad_shape.g.pop_back();
  EXPECT_EQ(error_code_of(handle_line(ds, encode(bad_shape))), "SHAPE_MISMATCH");
  QueryMsg bad_k = good;
  bad_k.k = 19;
  EXPECT_EQ(error_code_of(handle_line(ds, encode(bad_k))), "SHAPE_MISMATCH");
  QueryMsg bad_range = good;
  bad_range.g[0] = 13;
  EXPECT_EQ(error_code_of(handle_line(ds, encode(bad_range))), "OUT_OF_RANGE");
  EXPECT_EQ(error_code_of(handle_line(ds, "{oops")), "BAD_JSON");
  EXPECT_EQ(error_code_of(handle_line(ds, encode(HelloMsg{13, 20}))), "BAD_MESSAGE");
}

TEST(Session, Deterministic) {
  auto ex = worked_example_1();
  const auto plan = gen_query(ex.demand, ex.script);
  const Dataset ds{ex.field, generate_dataset(20, 13, 9).messages};
  const auto line = encode(to_wire(plan.query));
  EXPECT_EQ(handle_line(ds, line), handle_line(ds, line));
}

TEST(Endpoint, Parsing) {
  const auto ep = parse_endpoint("10.0.0.1:8080");
  EXPECT_EQ(ep.host, "10.0.0.1");
  EXPECT_EQ(ep.port, 8080);
  EXPECT_EQ(parse_endpoint(":99").host, "127.0.0.1");
  EXPECT_THROW((void)parse_endpoint("nohost"), Error);
  EXPECT_THROW((void)parse_endpoint("h:99999"), Error);
  ::setenv(kListenEnv, "127.0.0.1:4555", 1);
  EXPECT_EQ(default_endpoint().port, 4555);
  ::unsetenv(kListenEnv);
  EXPECT_EQ(default_endpoint().port, 7613);
}

TEST(Server, ExampleQueryOverSocket) {
  auto ex = worked_example_2();
  const auto ds = generate_dataset(20, 13, 7);
  RunningServer srv(ds);
  Client client(srv.endpoint());
  EXPECT_EQ(client.p(), 13u);
  EXPECT_EQ(client.k(), 20u);
  const auto plan = gen_query(ex.demand, ex.script);
  client.send(to_wire(plan.query));
  const auto reply = client.receive();
  ASSERT_TRUE(std::holds_alternative<AnswerMsg>(reply));
  EXPECT_EQ(std::get<AnswerMsg>(reply).y.size(), 11u);
  // a malformed line on the same connection yields an error, then service continues
  QueryMsg bad = to_wire(plan.query);
  bad.p = 11;
  client.send(bad);
  const auto err = client.receive();
  ASSERT_TRUE(std::holds_alternative<ErrorMsg>(err));
  EXPECT_EQ(std::get<ErrorMsg>(err).code, "FIELD_MISMATCH");
  client.send(to_wire(plan.query));
  EXPECT_TRUE(std::holds_alternative<AnswerMsg>(client.receive()));
}

TEST(Server, RetrieveMatchesLocalOracle) {
  const auto ds = generate_dataset(20, 13, 7);
  RunningServer srv(ds);
  SeededRandomness rnd(5);
  for (auto [d, l] : {std::pair<std::size_t, std::size_t>{8, 3}, {6, 3}, {4, 4}, {5, 1}}) {
    auto support = rnd.subset(20, d);
    for (auto& w : support) ++w;
    const auto demand = Demand::create(20, support, rnd.mds(l, d, ds.field));
    const auto res = retrieve(srv.endpoint(), demand, rnd);
    EXPECT_EQ(res.z, evaluate_demand(demand, ds.messages));
    EXPECT_EQ(res.download, res.layout.total_rows());
    EXPECT_EQ(res.rate, res.bounds.lower);
  }
}

TEST(Server, ClientSideMismatchChecks) {
  const auto ds = generate_dataset(10, 13, 7);
  RunningServer srv(ds);
  SeededRandomness rnd(1);
  const PrimeField f11(11);
  const auto wrong_field = Demand::create(10, {1, 2, 3}, rnd.mds(2, 3, f11));
  try {
    (void)retrieve(srv.endpoint(), wrong_field, rnd);
    FAIL();
  } catch (const WireError& e) {
    EXPECT_EQ(e.code(), "FIELD_MISMATCH");
  }
  const auto wrong_k = Demand::create(12, {1, 2, 3}, rnd.mds(2, 3, ds.field));
  try {
    (void)retrieve(srv.endpoint(), wrong_k, rnd);
    FAIL();
  } catch (const WireError& e) {
    EXPECT_EQ(e.code(), "SHAPE_MISMATCH");
  }
}

TEST(Server, StopsAfterMaxSessions) {
  Server server(generate_dataset(5, 13, 1), Endpoint{"127.0.0.1", 0});
  std::thread th([&] { server.run(2); });
  const Endpoint ep{"127.0.0.1", server.port()};
  { Client a(ep); }
  { Client b(ep); }
  th.join();
  EXPECT_EQ(server.sessions_served(), 2u);
}
