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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace plt::service {

namespace wire_code {
inline constexpr const char* kBadJson = "BAD_JSON";
inline constexpr const char* kBadMessage = "BAD_MESSAGE";
inline constexpr const char* kShapeMismatch = "SHAPE_MISMATCH";
inline constexpr const char* kBadPermutation = "BAD_PERMUTATION";
inline constexpr const char* kFieldMismatch = "FIELD_MISMATCH";
inline constexpr const char* kOutOfRange = "OUT_OF_RANGE";
inline constexpr const char* kIo = "IO_ERROR";
}  // namespace wire_code

/// Protocol failure carrying a wire error code.
class WireError : public std::runtime_error {
 public:
  WireError(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}
  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

struct HelloMsg {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  bool operator==(const HelloMsg&) const = default;
};

struct QueryMsg {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  std::vector<std::int64_t> g;   // row-major
  std::vector<std::int64_t> pi;  // pi[l-1] = pi(l), 1-indexed
  bool operator==(const QueryMsg&) const = default;
};

struct AnswerMsg {
  std::vector<std::int64_t> y;
  bool operator==(const AnswerMsg&) const = default;
};

struct ErrorMsg {
  std::string code;
  std::string detail;
  bool operator==(const ErrorMsg&) const = default;
};

using WireMessage = std::variant<HelloMsg, QueryMsg, AnswerMsg, ErrorMsg>;

/// One JSON object, no trailing newline.
inline std::string encode(const WireMessage& msg) {
  nlohmann::json j;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, HelloMsg>) {
          j = {{"type", "hello"}, {"p", m.p}, {"k", m.k}};
        } else if constexpr (std::is_same_v<T, QueryMsg>) {
          j = {{"type", "query"}, {"p", m.p},       {"k", m.k}, {"rows", m.rows},
               {"cols", m.cols},  {"g", m.g},       {"pi", m.pi}};
        } else if constexpr (std::is_same_v<T, AnswerMsg>) {
          j = {{"type", "answer"}, {"y", m.y}};
        } else {
          j = {{"type", "error"}, {"code", m.code}, {"detail", m.detail}};
        }
      },
      msg);
  return j.dump();
}

namespace detail {

template <class T>
T field_of(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw WireError(wire_code::kBadMessage, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw WireError(wire_code::kBadMessage, std::string("field \"") + key + "\" has the wrong type");
  }
}

inline std::uint64_t count_of(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() < 0) {
    throw WireError(wire_code::kBadMessage, std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return j.at(key).get<std::uint64_t>();
}

inline std::vector<std::int64_t> integers_of(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw WireError(wire_code::kBadMessage, std::string("field \"") + key + "\" must be an integer array");
  }
  std::vector<std::int64_t> out;
  out.reserve(j.at(key).size());
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) {
      throw WireError(wire_code::kBadMessage, std::string("field \"") + key + "\" must hold integers");
    }
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace detail

/// Parses one line. Throws WireError with BAD_JSON or BAD_MESSAGE.
inline WireMessage decode(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw WireError(wire_code::kBadJson, e.what());
  }
  if (!j.is_object()) throw WireError(wire_code::kBadMessage, "message must be a JSON object");
  const auto type = detail::field_of<std::string>(j, "type");
  if (type == "hello") return HelloMsg{detail::count_of(j, "p"), detail::count_of(j, "k")};
  if (type == "query") {
    return QueryMsg{detail::count_of(j, "p"),       detail::count_of(j, "k"),  detail::count_of(j, "rows"),
                    detail::count_of(j, "cols"),    detail::integers_of(j, "g"), detail::integers_of(j, "pi")};
  }
  if (type == "answer") return AnswerMsg{detail::integers_of(j, "y")};
  if (type == "error") return ErrorMsg{detail::field_of<std::string>(j, "code"), detail::field_of<std::string>(j, "detail")};
  throw WireError(wire_code::kBadMessage, "unknown message type \"" + type + "\"");
}

}  // namespace plt::service
