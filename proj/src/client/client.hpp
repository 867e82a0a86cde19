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

#ifndef CPO_CLIENT_CLIENT_HPP_
#define CPO_CLIENT_CLIENT_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "scoring/scoring.hpp"  // TokenSource

namespace cpo {

struct ModelRequest {
  std::string user_message;
  double temperature = 0.6;
  double top_p = 0.95;
  int max_tokens = 16384;
  int sample_index = 0;
  // Pre-seeded assistant turn (empty think block for the no-thinking
  // preset). Endpoints that reject prefill fall back to appending it to the
  // user message; the response is flagged so the run ledger can note it.
  std::optional<std::string> assistant_prefill;
};

struct ModelResponse {
  std::string text;
  std::int64_t completion_tokens = 0;
  TokenSource token_source = TokenSource::kReported;
  bool truncated = false;
  bool prefill_degraded = false;
};

// Uniform model-call surface. Implementations are thread-safe; callers may
// issue many completions concurrently and the client enforces its own
// in-flight bound.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual ModelResponse complete(const ModelRequest& request) = 0;
};

struct RetryOptions {
  int max_retries = 5;  // retries after the first attempt
  std::chrono::milliseconds initial_delay{1000};
};

// Full-jitter exponential backoff: uniform in [0, initial * 2^retry_index).
std::chrono::milliseconds backoff_delay(const RetryOptions& options,
                                        int retry_index, std::uint64_t salt);

using SleepFn = std::function<void(std::chrono::milliseconds)>;

// ceil(character_count / 4), the fallback when usage metadata is absent.
std::int64_t approximate_tokens(const std::string& text);

}  // namespace cpo

#endif  // CPO_CLIENT_CLIENT_HPP_
