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
#include <istream>
#include <string>

#include <boost/asio.hpp>

#include "plt/bounds.hpp"
#include "plt/gpc_pia.hpp"
#include "plt/random.hpp"
#include "plt/service/server.hpp"
#include "plt/service/session.hpp"
#include "plt/service/wire.hpp"

namespace plt::service {

struct RetrieveResult {
  FieldVector z;
  std::size_t download = 0;  // answer entries = rows(G)
  BlockLayout layout;
  CapacityBounds bounds;
  Rational rate;
};

/// One connection to a server; reads the hello on construction.
class Client {
 public:
  explicit Client(const Endpoint& ep) : socket_(io_), buf_(kMaxLineBytes) {
    boost::system::error_code ec;
    const boost::asio::ip::tcp::endpoint where(boost::asio::ip::make_address(ep.host, ec), ep.port);
    if (ec) throw WireError(wire_code::kIo, "bad address " + ep.host);
    socket_.connect(where, ec);
    if (ec) throw WireError(wire_code::kIo, "cannot connect to " + ep.str() + ": " + ec.message());
    const WireMessage first = receive();
    const auto* hello = std::get_if<HelloMsg>(&first);
    if (!hello) throw WireError(wire_code::kBadMessage, "server did not start with hello");
    hello_ = *hello;
  }

  std::uint64_t p() const noexcept { return hello_.p; }
  std::size_t k() const noexcept { return hello_.k; }

  void send(const WireMessage& msg) {
    const std::string framed = encode(msg) + '\n';
    boost::system::error_code ec;
    boost::asio::write(socket_, boost::asio::buffer(framed), ec);
    if (ec) throw WireError(wire_code::kIo, "send failed: " + ec.message());
  }

  WireMessage receive() {
    boost::system::error_code ec;
    boost::asio::read_until(socket_, buf_, '\n', ec);
    if (ec) throw WireError(wire_code::kIo, "receive failed: " + ec.message());
    std::istream in(&buf_);
    std::string line;
    std::getline(in, line);
    return decode(line);
  }

  /// Sends the query for `demand` and decodes the answer.
  RetrieveResult retrieve(const Demand& demand, Randomness& rnd) {
    const PrimeField& f = demand.coefficients.field();
    if (f.modulus() != p()) {
      throw WireError(wire_code::kFieldMismatch,
                      "demand is over F_" + std::to_string(f.modulus()) + ", server over F_" + std::to_string(p()));
    }
    if (demand.k != k()) {
      throw WireError(wire_code::kShapeMismatch,
                      "demand assumes K=" + std::to_string(demand.k) + ", server has " + std::to_string(k()));
    }
    const QueryPlan plan = gen_query(demand, rnd);
    send(to_wire(plan.query));
    const WireMessage reply = receive();
    if (const auto* err = std::get_if<ErrorMsg>(&reply)) throw WireError(err->code, err->detail);
    const auto* ans = std::get_if<AnswerMsg>(&reply);
    if (!ans) throw WireError(wire_code::kBadMessage, "expected an answer");
    if (ans->y.size() != plan.query.g.rows()) {
      throw WireError(wire_code::kShapeMismatch, "answer has " + std::to_string(ans->y.size()) + " entries, G has " +
                                                     std::to_string(plan.query.g.rows()) + " rows");
    }
    FieldVector y(f, ans->y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto v = ans->y[i];
      if (v < 0 || static_cast<std::uint64_t>(v) >= f.modulus()) throw WireError(wire_code::kOutOfRange, "answer entry");
      y[i] = static_cast<Residue>(v);
    }
    const auto k = static_cast<std::int64_t>(demand.k);
    const auto d = static_cast<std::int64_t>(demand.d());
    const auto l = static_cast<std::int64_t>(demand.l());
    return RetrieveResult{recover(Answer{y}, plan.state), y.size(), plan.state.layout, compute_bounds(k, d, l),
                          Rational(l, static_cast<std::int64_t>(y.size()))};
  }

 private:
  boost::asio::io_context io_;
  boost::asio::ip::tcp::socket socket_;
  boost::asio::streambuf buf_;
  HelloMsg hello_;
};

inline RetrieveResult retrieve(const Endpoint& ep, const Demand& demand, Randomness& rnd) {
  Client client(ep);
  return client.retrieve(demand, rnd);
}

}  // namespace plt::service
