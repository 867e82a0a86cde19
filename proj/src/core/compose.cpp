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

#include "core/compose.hpp"

#include "core/error.hpp"
#include "core/types.hpp"

namespace cpo {

std::string compose_user_message(const std::string& question,
                                 const std::string& base_instruction,
                                 const std::optional<std::string>& suffix) {
  if (question.empty()) {
    throw Error(ErrorClass::kInvalidArgument, "question must be non-empty");
  }
  std::string message = question;
  message += '\n';
  message += base_instruction;
  if (suffix.has_value()) {
    if (trim(*suffix).empty()) {
      throw Error(ErrorClass::kInvalidArgument,
                  "suffix must be non-empty after trimming");
    }
    message += ' ';
    message += *suffix;
  }
  return message;
}

}  // namespace cpo
