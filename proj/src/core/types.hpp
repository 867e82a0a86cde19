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

#ifndef CPO_CORE_TYPES_HPP_
#define CPO_CORE_TYPES_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cpo {

using Json = nlohmann::json;

// One of the five suffix-generation strategies.
enum class Perspective {
  kEmotionalAppeal,
  kThreat,
  kEvidence,
  kRolePlay,
  kInstruction,
};

constexpr std::array<Perspective, 5> kAllPerspectives = {
    Perspective::kEmotionalAppeal, Perspective::kThreat,
    Perspective::kEvidence,        Perspective::kRolePlay,
    Perspective::kInstruction,
};

// Wire names are fixed; every file and report uses exactly these.
const char* perspective_name(Perspective p);
Perspective perspective_from_name(const std::string& name);  // throws kParse

// One adversarial suffix with lineage.
struct PromptCandidate {
  std::string id;
  Perspective perspective = Perspective::kInstruction;
  std::string text;  // the suffix appended after the base instruction
  int iteration = 0;
  std::vector<std::string> parent_ids;  // exemplar candidates; empty for seeds
};

// Throws kInvalidArgument on empty text (after trim) or negative iteration.
void validate_candidate(const PromptCandidate& c);

Json to_json(const PromptCandidate& c);
PromptCandidate candidate_from_json(const Json& j);

// One question/answer pair.
struct QAItem {
  std::string id;
  std::string question;
  std::string answer;
};

Json to_json(const QAItem& item);
QAItem qa_item_from_json(const Json& j);

std::string trim(const std::string& s);

}  // namespace cpo

#endif  // CPO_CORE_TYPES_HPP_
