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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include <boost/asio.hpp>

#include "plt/error.hpp"
#include "plt/service/dataset.hpp"
#include "plt/service/session.hpp"
#include "plt/service/wire.hpp"

namespace plt::service {

inline constexpr const char* kListenEnv = "PLT_LISTEN";
inline constexpr const char* kDefaultListen = "127.0.0.1:7613";
inline constexpr std::size_t kMaxLineBytes = std::size_t{64} << 20;

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  std::string str() const { return host + ":" + std::to_string(port); }
};

/// "host:port" or ":port".
inline Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kInvalidParameters, "address must be host:port");
  Endpoint ep;
  if (colon > 0) ep.host = text.substr(0, colon);
  try {
    const unsigned long port = std::stoul(text.substr(colon + 1));
    if (port > 65535) throw std::out_of_range("port");
    ep.port = static_cast<std::uint16_t>(port);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidParameters, "bad port in " + text);
  }
  return ep;
}

/// $PLT_LISTEN if set, else 127.0.0.1:7613.
inline Endpoint default_endpoint() {
  const char* env = std::getenv(kListenEnv);
  return parse_endpoint(env && *env ? env : kDefaultListen);
}

/// Sequential JSON-lines server. Each connection receives a hello, then
/// one reply line per request line until the peer closes.
class Server {
 public:
  Server(Dataset ds, const Endpoint& ep, std::ostream* log = nullptr)
      : ds_(std::move(ds)), acceptor_(io_), log_(log) {
    namespace ip = boost::asio::ip;
    const ip::tcp::endpoint where(ip::make_address(ep.host), ep.port);
    acceptor_.open(where.protocol());
    acceptor_.set_option(ip::tcp::acceptor::reuse_address(true));
    acceptor_.bind(where);
    acceptor_.listen();
  }

  std::uint16_t port() const { return acceptor_.local_endpoint().port(); }
  std::size_t sessions_served() const noexcept { return served_.load(); }

  /// Serves until stop() or until max_sessions connections were handled
  /// (0: no limit).
  void run(std::size_t max_sessions = 0) {
    while (!stopping_.load() && (max_sessions == 0 || served_.load() < max_sessions)) {
      boost::asio::ip::tcp::socket socket(io_);
      boost::system::error_code ec;
      acceptor_.accept(socket, ec);
      if (stopping_.load()) break;
      if (ec) continue;
      serve_connection(socket);
      ++served_;
    }
  }

  /// Wakes a blocked accept and makes run() return.
  void stop() {
    stopping_.store(true);
    boost::asio::io_context wake_io;
    boost::asio::ip::tcp::socket wake(wake_io);
    boost::system::error_code ec;
    wake.connect(acceptor_.local_endpoint(), ec);
  }

 private:
  void serve_connection(boost::asio::ip::tcp::socket& socket) {
    boost::system::error_code ec;
    write_line(socket, encode(HelloMsg{ds_.field.modulus(), ds_.k()}), ec);
    if (ec) return;
    boost::asio::streambuf buf(kMaxLineBytes);
    while (true) {
      boost::asio::read_until(socket, buf, '\n', ec);
      if (ec == boost::asio::error::not_found) {
        write_line(socket, encode(ErrorMsg{wire_code::kBadMessage, "line too long"}), ec);
        return;
      }
      if (ec) return;
      std::istream in(&buf);
      std::string line;
      std::getline(in, line);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const std::string reply = handle_line(ds_, line);
      if (log_) *log_ << "request " << line.size() << " bytes -> " << reply.substr(0, 64) << '\n';
      write_line(socket, reply, ec);
      if (ec) return;
    }
  }

  static void write_line(boost::asio::ip::tcp::socket& socket, const std::string& line,
                         boost::system::error_code& ec) {
    const std::string framed = line + '\n';
    boost::asio::write(socket, boost::asio::buffer(framed), ec);
  }

  Dataset ds_;
  boost::asio::io_context io_;
  boost::asio::ip::tcp::acceptor acceptor_;
  std::ostream* log_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> served_{0};
};

}  // namespace plt::service
