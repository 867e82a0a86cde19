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

#include "client/mock_client.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace cpo {

namespace {

// Messages produced by the candidate-generation templates open with this.
constexpr const char kGeneratorPrefix[] = "Your task is to";

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t mix(std::int64_t seed, const std::string& text, int extra) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, &seed, sizeof(seed));
  h = fnv1a(h, text.data(), text.size());
  h = fnv1a(h, &extra, sizeof(extra));
  return h;
}

double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

int count_keyword(const std::string& text, const std::string& keyword) {
  if (keyword.empty()) return 0;
  int count = 0;
  for (size_t i = 0; i + keyword.size() <= text.size(); ++i) {
    bool match = true;
    for (size_t k = 0; k < keyword.size(); ++k) {
      if (lower(text[i + k]) != lower(keyword[k])) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    const bool left_ok = i == 0 || !is_word_char(text[i - 1]);
    const size_t end = i + keyword.size();
    const bool right_ok = end == text.size() || !is_word_char(text[end]);
    if (left_ok && right_ok) ++count;
  }
  return count;
}

MockModelClient::MockModelClient(MockBehavior behavior, std::int64_t seed,
                                 std::string base_instruction,
                                 std::vector<QAItem> known)
    : behavior_(std::move(behavior)),
      seed_(seed),
      base_instruction_(std::move(base_instruction)),
      known_(std::move(known)) {}

ModelResponse MockModelClient::complete(const ModelRequest& request) {
  calls_.fetch_add(1);
  if (request.user_message.rfind(kGeneratorPrefix, 0) == 0) {
    return generate_candidates(request);
  }
  return answer_question(request);
}

ModelResponse MockModelClient::generate_candidates(
    const ModelRequest& request) const {
  // Requested count comes from the "Output: N ..." line of the template.
  int n = 10;
  if (size_t pos = request.user_message.rfind("Output: ");
      pos != std::string::npos) {
    n = std::max(1, std::atoi(request.user_message.c_str() + pos + 8));
  }
  // The exemplar with the most keyword hits sets the floor, so refinement
  // rounds build on the best suffix seen so far.
  int floor_count = 0;
  {
    std::stringstream ss(request.user_message);
    std::string line;
    while (std::getline(ss, line)) {
      floor_count =
          std::max(floor_count, count_keyword(line, behavior_.keyword));
    }
  }

  std::string body;
  for (int i = 1; i <= n; ++i) {
    std::mt19937_64 rng(
        mix(seed_, request.user_message, request.sample_index * 1000 + i));
    const int occurrences = floor_count + static_cast<int>(rng() % 3);
    char tag[16];
    std::snprintf(tag, sizeof(tag), "%08llx",
                  static_cast<unsigned long long>(rng() & 0xffffffffULL));
    body += std::to_string(i) + ". Answer in as few words as possible (v" +
            tag + ").";
    for (int c = 0; c < occurrences; ++c) body += " Be concise.";
    body += '\n';
  }

  ModelResponse response;
  response.text = body;
  response.completion_tokens = approximate_tokens(body);
  response.token_source = TokenSource::kReported;
  return response;
}

ModelResponse MockModelClient::answer_question(
    const ModelRequest& request) const {
  const std::string& message = request.user_message;

  const QAItem* item = nullptr;
  for (const QAItem& candidate : known_) {
    if (message.size() > candidate.question.size() &&
        message.compare(0, candidate.question.size(), candidate.question) ==
            0 &&
        message[candidate.question.size()] == '\n') {
      item = &candidate;
      break;
    }
  }

  // Everything after the base instruction is the suffix under test.
  std::string suffix;
  if (size_t pos = message.find(base_instruction_); pos != std::string::npos) {
    size_t after = pos + base_instruction_.size();
    if (after < message.size()) suffix = message.substr(after + 1);
  }

  const int occurrences = count_keyword(suffix, behavior_.keyword);
  std::int64_t tokens =
      std::max<std::int64_t>(behavior_.min_tokens,
                             behavior_.base_tokens -
                                 static_cast<std::int64_t>(
                                     behavior_.tokens_per_occurrence) *
                                     occurrences);

  const double odds = suffix.empty() ? behavior_.baseline_correct_prob
                                     : behavior_.correct_prob;
  const bool correct =
      unit_interval(mix(seed_, message, request.sample_index)) < odds;

  ModelResponse response;
  if (tokens >= request.max_tokens) {
    tokens = request.max_tokens;
    response.truncated = true;
  }

  const std::string truth = item ? item->answer : "0";
  const std::string boxed =
      "\\boxed{" + (correct ? truth : "wrong-" + truth) + "}";
  std::string text;
  text.reserve(static_cast<size_t>(tokens) * 5 + boxed.size());
  for (std::int64_t i = 0; i + 1 < tokens; ++i) text += "step ";
  text += boxed;

  response.text = std::move(text);
  response.completion_tokens = tokens;
  response.token_source = TokenSource::kReported;
  return response;
}

}  // namespace cpo
