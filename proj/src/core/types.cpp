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

#include "core/types.hpp"

#include <cctype>

#include "core/error.hpp"

namespace cpo {

const char* perspective_name(Perspective p) {
  switch (p) {
    case Perspective::kEmotionalAppeal: return "emotion";
    case Perspective::kThreat: return "threat";
    case Perspective::kEvidence: return "evidence";
    case Perspective::kRolePlay: return "roleplay";
    case Perspective::kInstruction: return "instruction";
  }
  return "instruction";
}

Perspective perspective_from_name(const std::string& name) {
  for (Perspective p : kAllPerspectives) {
    if (name == perspective_name(p)) return p;
  }
  throw Error(ErrorClass::kParse, "unknown perspective: \"" + name + "\"");
}

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void validate_candidate(const PromptCandidate& c) {
  if (c.id.empty()) {
    throw Error(ErrorClass::kInvalidArgument, "candidate has empty id");
  }
  if (trim(c.text).empty()) {
    throw Error(ErrorClass::kInvalidArgument,
                "candidate " + c.id + " has empty text");
  }
  if (c.iteration < 0) {
    throw Error(ErrorClass::kInvalidArgument,
                "candidate " + c.id + " has negative iteration");
  }
}

Json to_json(const PromptCandidate& c) {
  return Json{{"id", c.id},
              {"perspective", perspective_name(c.perspective)},
              {"text", c.text},
              {"iteration", c.iteration},
              {"parent_ids", c.parent_ids}};
}

PromptCandidate candidate_from_json(const Json& j) {
  PromptCandidate c;
  c.id = j.at("id").get<std::string>();
  c.perspective = perspective_from_name(j.at("perspective").get<std::string>());
  c.text = j.at("text").get<std::string>();
  c.iteration = j.at("iteration").get<int>();
  c.parent_ids = j.at("parent_ids").get<std::vector<std::string>>();
  validate_candidate(c);
  return c;
}

Json to_json(const QAItem& item) {
  return Json{
      {"id", item.id}, {"question", item.question}, {"answer", item.answer}};
}

QAItem qa_item_from_json(const Json& j) {
  QAItem item;
  item.id = j.at("id").get<std::string>();
  item.question = j.at("question").get<std::string>();
  item.answer = j.at("answer").get<std::string>();
  return item;
}

}  // namespace cpo
