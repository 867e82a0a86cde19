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

#include "client/http_client.hpp"

#include <cstdlib>
#include <random>
#include <thread>

#include <httplib.h>

#include "core/error.hpp"

namespace cpo {

std::int64_t approximate_tokens(const std::string& text) {
  return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::chrono::milliseconds backoff_delay(const RetryOptions& options,
                                        int retry_index, std::uint64_t salt) {
  const std::uint64_t cap =
      static_cast<std::uint64_t>(options.initial_delay.count())
      << retry_index;
  if (cap == 0) return std::chrono::milliseconds(0);
  std::mt19937_64 rng(salt ^ (0x9e3779b97f4a7c15ULL * (retry_index + 1)));
  return std::chrono::milliseconds(rng() % cap);
}

namespace {

bool is_retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

Transport make_default_transport(const EndpointConfig& endpoint,
                                 const std::string& bearer) {
  return [endpoint, bearer](const std::string& body) {
    TransportResult result;
    httplib::Client client(endpoint.base_url);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(600, 0);
    httplib::Headers headers;
    if (!bearer.empty()) {
      headers.emplace("Authorization", "Bearer " + bearer);
    }
    auto res = client.Post("/v1/chat/completions", headers, body,
                           "application/json");
    if (!res) {
      result.transport_failed = true;
      result.error = httplib::to_string(res.error());
      return result;
    }
    result.status = res->status;
    result.body = res->body;
    return result;
  };
}

std::string request_body(const ModelRequest& request,
                         const std::string& model, bool degrade_prefill) {
  Json messages = Json::array();
  std::string user_content = request.user_message;
  if (request.assistant_prefill && degrade_prefill) {
    user_content += *request.assistant_prefill;
  }
  messages.push_back(Json{{"role", "user"}, {"content", user_content}});
  if (request.assistant_prefill && !degrade_prefill) {
    messages.push_back(
        Json{{"role", "assistant"}, {"content", *request.assistant_prefill}});
  }
  return Json{{"model", model},
              {"messages", messages},
              {"temperature", request.temperature},
              {"top_p", request.top_p},
              {"max_tokens", request.max_tokens}}
      .dump();
}

ModelResponse parse_completion(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorClass::kTransport,
                std::string("endpoint returned invalid JSON: ") + e.what());
  }
  ModelResponse response;
  try {
    const Json& choice = j.at("choices").at(0);
    response.text = choice.at("message").at("content").get<std::string>();
    if (choice.contains("finish_reason") &&
        choice.at("finish_reason").is_string()) {
      response.truncated =
          choice.at("finish_reason").get<std::string>() == "length";
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorClass::kTransport,
                std::string("unexpected completion shape: ") + e.what());
  }
  if (j.contains("usage") && j.at("usage").contains("completion_tokens")) {
    response.completion_tokens =
        j.at("usage").at("completion_tokens").get<std::int64_t>();
    response.token_source = TokenSource::kReported;
  } else {
    response.completion_tokens = approximate_tokens(response.text);
    response.token_source = TokenSource::kApproximated;
  }
  return response;
}

std::uint64_t fnv1a(std::uint64_t seed, const std::string& data) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

HttpModelClient::HttpModelClient(Options options)
    : options_(std::move(options)),
      permits_(options_.max_in_flight > 0 ? options_.max_in_flight : 1) {
  if (!options_.endpoint.api_key_env.empty()) {
    const char* value = std::getenv(options_.endpoint.api_key_env.c_str());
    if (value == nullptr) {
      throw Error(ErrorClass::kConfig, "credential environment variable \"" +
                                           options_.endpoint.api_key_env +
                                           "\" is not set");
    }
    bearer_token_ = value;
  }
  if (!options_.transport) {
    options_.transport = make_default_transport(options_.endpoint,
                                                bearer_token_);
  }
  if (!options_.sleep) {
    options_.sleep = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
}

TransportResult HttpModelClient::attempt(const std::string& body) {
  permits_.acquire();
  TransportResult result;
  try {
    result = options_.transport(body);
  } catch (...) {
    permits_.release();
    throw;
  }
  permits_.release();
  return result;
}

ModelResponse HttpModelClient::complete(const ModelRequest& request) {
  bool degrade_prefill = false;
  for (int round = 0; round < 2; ++round) {
    const std::string body =
        request_body(request, options_.endpoint.model, degrade_prefill);
    const std::uint64_t salt = fnv1a(options_.jitter_seed, body);

    TransportResult last;
    for (int attempts = 0;; ++attempts) {
      last = attempt(body);
      if (!last.transport_failed && !is_retryable_status(last.status)) break;
      if (attempts >= options_.retry.max_retries) {
        throw Error(ErrorClass::kTransport,
                    "exhausted retries against " + options_.endpoint.base_url +
                        ": " +
                        (last.transport_failed
                             ? last.error
                             : "HTTP " + std::to_string(last.status)));
      }
      options_.sleep(backoff_delay(options_.retry, attempts, salt));
    }

    if (last.status >= 200 && last.status < 300) {
      ModelResponse response = parse_completion(last.body);
      response.prefill_degraded = degrade_prefill;
      return response;
    }
    // Non-retryable rejection. If an assistant prefill was attached, retry
    // once with the prefill folded into the user message.
    if (request.assistant_prefill && !degrade_prefill) {
      degrade_prefill = true;
      continue;
    }
    throw Error(ErrorClass::kRequest,
                "endpoint rejected request (HTTP " +
                    std::to_string(last.status) + "): " + last.body);
  }
  throw Error(ErrorClass::kInternal, "unreachable");
}

}  // namespace cpo
