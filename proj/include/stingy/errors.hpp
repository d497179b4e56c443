// Copyright 2026 The Stingy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace stingy {

enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  BadTrace,
  NotPSD,
  NotNormalized,
  NotOrthonormal,
  RegisterTooLarge,
  SubsetMismatch,
  FullTrace,
  IndexOutOfRange,
  BasisMismatch,
  BadLossCount,
  BadThreshold,
  NotTracePreserving,
  ChannelMismatch,
  UnknownChannel,
  BadParams,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::RegisterTooLarge: return "RegisterTooLarge";
    case ErrorCode::SubsetMismatch: return "SubsetMismatch";
    case ErrorCode::FullTrace: return "FullTrace";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::BadLossCount: return "BadLossCount";
    case ErrorCode::BadThreshold: return "BadThreshold";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::ChannelMismatch: return "ChannelMismatch";
    case ErrorCode::UnknownChannel: return "UnknownChannel";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Thrown by every validating constructor and operation. The message names
/// the violated invariant and, where one exists, the offending magnitude.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stingy
