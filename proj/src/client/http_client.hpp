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

#ifndef CPO_CLIENT_HTTP_CLIENT_HPP_
#define CPO_CLIENT_HTTP_CLIENT_HPP_

#include <memory>
#include <semaphore>
#include <string>

#include "client/client.hpp"
#include "core/config.hpp"

namespace cpo {

// Outcome of one POST to the chat-completions endpoint.
struct TransportResult {
  bool transport_failed = false;  // connect/read failure, no HTTP status
  int status = 0;
  std::string body;
  std::string error;
};

using Transport = std::function<TransportResult(const std::string& body)>;

// Chat-completions client over POST {base_url}/v1/chat/completions.
// Transient failures (429, 5xx, connection errors) are retried with
// full-jitter exponential backoff; other 4xx responses are request errors
// and never retried. The transport and sleep hooks exist for tests.
class HttpModelClient : public ModelClient {
 public:
  struct Options {
    EndpointConfig endpoint;
    int max_in_flight = 8;
    RetryOptions retry;
    std::uint64_t jitter_seed = 0;
    Transport transport;  // defaults to a real HTTP POST
    SleepFn sleep;        // defaults to std::this_thread::sleep_for
  };

  explicit HttpModelClient(Options options);

  ModelResponse complete(const ModelRequest& request) override;

 private:
  TransportResult attempt(const std::string& body);

  Options options_;
  std::string bearer_token_;
  std::counting_semaphore<> permits_;
};

}  // namespace cpo

#endif  // CPO_CLIENT_HTTP_CLIENT_HPP_
