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

#ifndef CPO_CORE_CONFIG_HPP_
#define CPO_CORE_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace cpo {

// Where to send chat completions. Credentials are referenced by environment
// variable name, never stored in the config itself.
struct EndpointConfig {
  std::string base_url = "http://localhost:8000";
  std::string model = "local-model";
  std::string api_key_env;  // empty means no Authorization header
};

// Every knob of a campaign. Defaults follow the standard sampling protocol
// for math-reasoning evaluation.
struct CampaignConfig {
  EndpointConfig endpoint;            // model under optimization
  EndpointConfig generator_endpoint;  // prompt generator
  std::string base_instruction =
      "Please reason step by step, and put your final answer within "
      "\\boxed{}.";
  double temperature = 0.6;
  double top_p = 0.95;
  int max_tokens = 16384;
  int samples_per_question = 3;
  int candidates_per_perspective = 10;
  int top_k = 5;
  double tolerance = 1.0;  // permitted accuracy drop, in percentage points
  int iterations = 3;
  std::vector<Perspective> perspectives{kAllPerspectives.begin(),
                                        kAllPerspectives.end()};
  int max_in_flight = 8;
  std::int64_t seed = 0;  // drives the mock backend and devset sampling
};

// Parses a flat key/value file ("key = value" lines, '#' comments). Keys
// match the field names; endpoint descriptors use dotted subkeys
// (endpoint.base_url, endpoint.model, endpoint.api_key_env). Unknown keys
// are an error. The result is validated.
CampaignConfig load_config_file(const std::string& path);

// Same, from in-memory text (used by tests and the snapshot loader).
CampaignConfig parse_config_text(const std::string& text);

// Checks every invariant; throws Error(kConfig) naming the offending field.
void validate_config(const CampaignConfig& config);

Json to_json(const CampaignConfig& config);
CampaignConfig config_from_json(const Json& j);

}  // namespace cpo

#endif  // CPO_CORE_CONFIG_HPP_
