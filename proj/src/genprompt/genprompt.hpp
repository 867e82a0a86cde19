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

#ifndef CPO_GENPROMPT_GENPROMPT_HPP_
#define CPO_GENPROMPT_GENPROMPT_HPP_

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "core/types.hpp"

namespace cpo {

// How one perspective briefs the generator: a display name, a persuasion
// definition (empty for the plain-instruction perspective, which uses the
// shorter template), and the shipped seed exemplars.
struct PerspectiveSpec {
  Perspective perspective = Perspective::kInstruction;
  std::string display_name;
  std::string definition;
  std::vector<std::string> seed_examples;
};

const PerspectiveSpec& perspective_spec(Perspective p);

// Fills the generation template: objective sentence, technique definition
// (when the perspective has one), numbered exemplars, and the request for
// exactly n prompts. Deterministic; every exemplar appears verbatim once.
std::string render_generator_instruction(const PerspectiveSpec& spec,
                                         const std::vector<std::string>& exemplars,
                                         int n);

// Extracts numbered-list items from generator output, trims markup, drops
// empties and exact duplicates (within the output and against
// existing_texts), and assigns ids i<II>-<perspective>-<NN> starting at
// start_index. Returns at most expected_n candidates; may return fewer.
std::vector<PromptCandidate> parse_generated_candidates(
    const std::string& generator_output, Perspective perspective,
    int iteration, int expected_n,
    const std::unordered_set<std::string>& existing_texts, int start_index,
    const std::vector<std::string>& parent_ids);

// Fixed comparison prompts.
struct BaselinePreset {
  std::string name;  // original | nothinking | beconcise | chainofdraft
  std::optional<std::string> suffix;
  std::optional<std::string> assistant_prefill;
};

const std::vector<BaselinePreset>& baseline_presets();
const BaselinePreset& preset_by_name(const std::string& name);  // kConfig

}  // namespace cpo

#endif  // CPO_GENPROMPT_GENPROMPT_HPP_
