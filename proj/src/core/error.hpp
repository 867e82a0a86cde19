// Copyright 2026 The cpo Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPO_CORE_ERROR_HPP_
#define CPO_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cpo {

// Failure taxonomy. The first four classes map onto the CLI exit codes;
// everything else surfaces as a generic failure.
enum class ErrorClass {
  kInvalidArgument,
  kConfig,
  kParse,
  kIo,
  kTransport,  // exhausted retries, unreachable endpoint
  kRequest,    // non-retryable endpoint rejection (4xx)
  kGeneration, // prompt generator produced nothing usable
  kFinalize,   // no tolerance-passing candidate to elect
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg)
      : std::runtime_error(msg), cls_(cls) {}

  ErrorClass cls() const { return cls_; }

 private:
  ErrorClass cls_;
};

inline const char* error_class_name(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::kInvalidArgument: return "invalid-argument";
    case ErrorClass::kConfig: return "config";
    case ErrorClass::kParse: return "parse";
    case ErrorClass::kIo: return "io";
    case ErrorClass::kTransport: return "transport";
    case ErrorClass::kRequest: return "request";
    case ErrorClass::kGeneration: return "generation";
    case ErrorClass::kFinalize: return "finalize";
    case ErrorClass::kInternal: return "internal";
  }
  return "internal";
}

// CLI contract: 0 success, 2 config, 3 transport, 4 generation, 5 finalize.
inline int exit_code_for(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::kInvalidArgument:
    case ErrorClass::kConfig:
    case ErrorClass::kParse:
    case ErrorClass::kIo:
      return 2;
    case ErrorClass::kTransport:
    case ErrorClass::kRequest:
      return 3;
    case ErrorClass::kGeneration:
      return 4;
    case ErrorClass::kFinalize:
      return 5;
    case ErrorClass::kInternal:
      return 1;
  }
  return 1;
}

}  // namespace cpo

#endif  // CPO_CORE_ERROR_HPP_
