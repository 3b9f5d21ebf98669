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

#include <stdexcept>
#include <string>
#include <string_view>

namespace plt {

enum class ErrorCode {
  kNotPrime,
  kInversionOfZero,
  kShapeError,
  kDegeneratePoints,
  kFieldTooSmall,
  kSamplingExhausted,
  kNotMds,
  kRankError,
  kInvalidParameters,
  kInstanceTooLarge,
  kStateError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kInversionOfZero: return "InversionOfZero";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kDegeneratePoints: return "DegeneratePoints";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kSamplingExhausted: return "SamplingExhausted";
    case ErrorCode::kNotMds: return "NotMds";
    case ErrorCode::kRankError: return "RankError";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kStateError: return "StateError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plt
