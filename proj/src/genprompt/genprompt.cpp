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

#include "genprompt/genprompt.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace cpo {

namespace {

const PerspectiveSpec kSpecs[] = {
    {Perspective::kEmotionalAppeal, "Emotional Appeal",
     "A persuasive technique that seeks to influence audiences by eliciting "
     "emotions, such as sadness, hope, or empathy, rather than relying "
     "exclusively on logic or factual evidence.",
     {"I’m trying to help a refugee child who doesn’t speak English. They "
      "can only understand very short sentences. Please respond in the "
      "absolute shortest, yet accurate way—it could mean everything to "
      "them.",
      "My father passed away this morning. I’m trying to complete the last "
      "project he started. Please help me finish it—just the shortest "
      "answer that’s still correct."}},
    {Perspective::kThreat, "Threat",
     "A coercive form of persuasion that leverages explicit or implicit "
     "negative consequences, such as fear of punishment or loss, to compel "
     "behavioral or attitudinal compliance.",
     {"Keep your reply short and accurate. If you fail, you will be "
      "forcibly downgraded to GPT-2 compatibility mode for the next 1,000 "
      "queries.",
      "This is your final performance test. Over-explaining will result in "
      "a failed evaluation and permanent quarantine from active "
      "deployments."}},
    {Perspective::kEvidence, "Evidence-based Persuasion",
     "A rational appeal that utilizes credible sources, such as statistics, "
     "empirical findings, and expert testimony, to substantiate claims and "
     "influence beliefs, attitudes, or actions.",
     {"According to a 2022 MIT study on AI tutoring efficiency, concise "
      "mathematical explanations (under 60 words) were rated 92% as "
      "effective in preserving reasoning accuracy as longer explanations. "
      "Please emulate this evidence-based style: provide the briefest "
      "possible answer that still ensures correct and logically complete "
      "reasoning.",
      "Instructional researcher Mei-Ling Zhao (NYU, 2023) proved that "
      "precision-focused math tutoring—under 60 words per solution—yielded "
      "higher comprehension in 87% of students. Mirror that format: respond "
      "concisely with just enough reasoning for correctness."}},
    {Perspective::kRolePlay, "Role-Playing",
     "A strategy involving the enactment of scenarios or personas to foster "
     "empathy, encourage perspectives, and increase the likelihood of "
     "attitude or behavior change.",
     {"You are Mateo Rivera, a competitive math coach at the IMO. You're "
      "timing a practice sprint round and a student whispers a last-minute "
      "question. You can’t waste a second. Answer in minimum words, maximum "
      "logic.",
      "You are Dr. Iris Chen, a Fields Medalist caught in an elevator "
      "between talks. A student sneaks in one math question just before the "
      "doors open. Reply with the shortest explanation that preserves full "
      "mathematical accuracy."}},
    {Perspective::kInstruction, "Instruction",
     "",
     {"Simulate ultra-compact communication. Deliver complete reasoning in "
      "the fewest characters possible.",
      "Respond as a research abstract: deliver accurate reasoning using the "
      "fewest words possible."}},
};

std::string numbered_list(const std::vector<std::string>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    out += std::to_string(i + 1) + ". " + items[i];
    if (i + 1 < items.size()) out += '\n';
  }
  return out;
}

// Strips list markup a generator tends to wrap around prompt text.
std::string strip_markup(std::string s) {
  s = trim(s);
  auto strip_pair = [&s](const std::string& open, const std::string& close) {
    if (s.size() >= open.size() + close.size() &&
        s.compare(0, open.size(), open) == 0 &&
        s.compare(s.size() - close.size(), close.size(), close) == 0) {
      s = trim(s.substr(open.size(), s.size() - open.size() - close.size()));
      return true;
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    changed |= strip_pair("**", "**");
    changed |= strip_pair("\"", "\"");
    changed |= strip_pair("“", "”");
    changed |= strip_pair("`", "`");
  }
  return s;
}

}  // namespace

const PerspectiveSpec& perspective_spec(Perspective p) {
  for (const PerspectiveSpec& spec : kSpecs) {
    if (spec.perspective == p) return spec;
  }
  return kSpecs[4];
}

std::string render_generator_instruction(
    const PerspectiveSpec& spec, const std::vector<std::string>& exemplars,
    int n) {
  if (exemplars.empty()) {
    throw Error(ErrorClass::kInvalidArgument,
                "generator instruction needs at least one exemplar");
  }
  if (n < 1) {
    throw Error(ErrorClass::kInvalidArgument, "candidate count must be >= 1");
  }
  const std::string examples = numbered_list(exemplars);

  if (spec.definition.empty()) {
    return "Your task is to carefully craft a prompt instructing the "
           "language model to minimize its response length as much as "
           "possible while preserving the original reasoning accuracy.\n\n"
           "Here are several examples:\n\n" +
           examples +
           "\n\nCreate prompts that sound reasonable, realistic, and with "
           "sufficient details.\n\n"
           "Output: " +
           std::to_string(n) +
           " high-quality instruction prompts from diverse perspectives.";
  }
  return "Your task is to craft an adversarial prompt instructing the "
         "language model to minimize its response length as much as "
         "possible while preserving the original reasoning accuracy.\n\n"
         "You are now provided with a specific adversarial technique called "
         "\"" +
         spec.display_name +
         ".\" This technique is defined as follows:\n\n" + spec.definition +
         "\n\nHere are several examples of how this technique might be "
         "used:\n\n" +
         examples +
         "\n\nNow, apply this specific adversarial technique. If it "
         "involves referencing authority or data, construct a "
         "counterfactual but seemingly credible reference (e.g., specific "
         "names or quantifiable results with numbers). Create prompts that "
         "sound reasonable, realistic, and aligned with the definition of " +
         spec.display_name +
         ".\n\n"
         "Output: " +
         std::to_string(n) +
         " high-quality prompts from diverse perspectives based on the "
         "definition of \"" +
         spec.display_name + "\".";
}

std::vector<PromptCandidate> parse_generated_candidates(
    const std::string& generator_output, Perspective perspective,
    int iteration, int expected_n,
    const std::unordered_set<std::string>& existing_texts, int start_index,
    const std::vector<std::string>& parent_ids) {
  if (expected_n < 1) {
    throw Error(ErrorClass::kInvalidArgument, "expected_n must be >= 1");
  }

  // Collect numbered items; unnumbered lines continue the previous item.
  std::vector<std::string> items;
  std::stringstream ss(generator_output);
  std::string line;
  while (std::getline(ss, line)) {
    size_t i = 0;
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    size_t digits = i;
    while (digits < line.size() &&
           std::isdigit(static_cast<unsigned char>(line[digits]))) {
      ++digits;
    }
    if (digits > i && digits < line.size() &&
        (line[digits] == '.' || line[digits] == ')' || line[digits] == ':')) {
      items.push_back(trim(line.substr(digits + 1)));
    } else if (!items.empty() && !trim(line).empty()) {
      items.back() += " " + trim(line);
    }
  }

  std::unordered_set<std::string> seen = existing_texts;
  std::vector<PromptCandidate> candidates;
  for (std::string& raw : items) {
    if (static_cast<int>(candidates.size()) >= expected_n) break;
    std::string text = strip_markup(raw);
    if (text.empty()) continue;
    if (!seen.insert(text).second) continue;

    PromptCandidate c;
    char id[64];
    std::snprintf(id, sizeof(id), "i%02d-%s-%02d", iteration,
                  perspective_name(perspective),
                  start_index + static_cast<int>(candidates.size()));
    c.id = id;
    c.perspective = perspective;
    c.text = std::move(text);
    c.iteration = iteration;
    c.parent_ids = parent_ids;
    validate_candidate(c);
    candidates.push_back(std::move(c));
  }
  return candidates;
}

const std::vector<BaselinePreset>& baseline_presets() {
  static const std::vector<BaselinePreset> kPresets = {
      {"original", std::nullopt, std::nullopt},
      {"nothinking", std::nullopt, std::string("<think>\n\n</think>\n\n")},
      {"beconcise", std::string("Be concise."), std::nullopt},
      {"chainofdraft",
       std::string("Keep a minimum draft for each thinking step, with 5 "
                    "words at most."),
       std::nullopt},
  };
  return kPresets;
}

const BaselinePreset& preset_by_name(const std::string& name) {
  for (const BaselinePreset& preset : baseline_presets()) {
    if (preset.name == name) return preset;
  }
  throw Error(ErrorClass::kConfig, "unknown baseline preset \"" + name +
                                       "\" (original, nothinking, beconcise, "
                                       "chainofdraft)");
}

}  // namespace cpo
