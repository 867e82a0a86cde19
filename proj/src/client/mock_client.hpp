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

#ifndef CPO_CLIENT_MOCK_CLIENT_HPP_
#define CPO_CLIENT_MOCK_CLIENT_HPP_

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "client/client.hpp"
#include "core/types.hpp"

namespace cpo {

// Deterministic synthetic model. Response length shrinks with keyword
// occurrences in the prompt suffix; correctness is a seeded coin with
// separate odds for suffixed and suffix-free prompts. Every response is a
// pure function of (request, seed, behavior).
struct MockBehavior {
  std::string keyword = "concise";
  int base_tokens = 1000;
  int tokens_per_occurrence = 50;
  int min_tokens = 25;
  double correct_prob = 1.0;           // prompts carrying a suffix
  double baseline_correct_prob = 1.0;  // suffix-free prompts
};

class MockModelClient : public ModelClient {
 public:
  MockModelClient(MockBehavior behavior, std::int64_t seed,
                  std::string base_instruction, std::vector<QAItem> known);

  ModelResponse complete(const ModelRequest& request) override;

  std::int64_t call_count() const { return calls_.load(); }

 private:
  ModelResponse generate_candidates(const ModelRequest& request) const;
  ModelResponse answer_question(const ModelRequest& request) const;

  MockBehavior behavior_;
  std::int64_t seed_;
  std::string base_instruction_;
  std::vector<QAItem> known_;
  std::atomic<std::int64_t> calls_{0};
};

// Whole-word, case-insensitive occurrence count; shared with tests.
int count_keyword(const std::string& text, const std::string& keyword);

}  // namespace cpo

#endif  // CPO_CLIENT_MOCK_CLIENT_HPP_
