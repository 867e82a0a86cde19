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

#ifndef CPO_CORE_COMPOSE_HPP_
#define CPO_CORE_COMPOSE_HPP_

#include <optional>
#include <string>

namespace cpo {

// The single canonical user-message composition used by every evaluation:
// question, newline, instruction, and when a suffix is present a single
// space followed by the suffix. An empty question or a suffix that is empty
// after trimming is rejected (kInvalidArgument).
std::string compose_user_message(const std::string& question,
                                 const std::string& base_instruction,
                                 const std::optional<std::string>& suffix);

}  // namespace cpo

#endif  // CPO_CORE_COMPOSE_HPP_
