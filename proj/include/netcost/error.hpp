// Copyright 2026 The netcost Authors.
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

namespace netcost {

enum class ErrorCode {
  // input / evidence errors
  ParseError,
  NegativeBytes,
  SchemaError,
  InvalidAddress,
  InvalidTopology,
  EmptyTrace,
  InsufficientSamples,
  NonMonotonicTime,
  // argument / configuration errors
  InvalidBucket,
  InvalidWindow,
  InvalidDuration,
  InvalidPattern,
  InvalidPricing,
  InvalidPolicy,
  InvalidRange,
  EmptySeries,
  MissingRate,
  NonMonotone,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeBytes: return "NegativeBytes";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidAddress: return "InvalidAddress";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::InvalidBucket: return "InvalidBucket";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::InvalidDuration: return "InvalidDuration";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::InvalidPricing: return "InvalidPricing";
    case ErrorCode::InvalidPolicy: return "InvalidPolicy";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::MissingRate: return "MissingRate";
    case ErrorCode::NonMonotone: return "NonMonotone";
  }
  return "Unknown";
}

/// True for errors caused by malformed or inconsistent evidence (files,
/// topologies, traces). Everything else is a configuration error.
constexpr bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NegativeBytes:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidAddress:
    case ErrorCode::InvalidTopology:
    case ErrorCode::EmptyTrace:
    case ErrorCode::InsufficientSamples:
    case ErrorCode::NonMonotonicTime:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace netcost
