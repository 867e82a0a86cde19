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

#include "core/config.hpp"

#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace cpo {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw Error(ErrorClass::kConfig, "config field \"" + field + "\": " + why);
}

double parse_real(const std::string& field, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    bad_field(field, "expected a number, got \"" + value + "\"");
  }
}

std::int64_t parse_int(const std::string& field, const std::string& value) {
  try {
    size_t pos = 0;
    std::int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    bad_field(field, "expected an integer, got \"" + value + "\"");
  }
}

std::vector<Perspective> parse_perspectives(const std::string& field,
                                            const std::string& value) {
  std::vector<Perspective> out;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    Perspective p;
    try {
      p = perspective_from_name(part);
    } catch (const Error&) {
      bad_field(field, "unknown perspective \"" + part + "\"");
    }
    for (Perspective seen : out) {
      if (seen == p) bad_field(field, "duplicate perspective \"" + part + "\"");
    }
    out.push_back(p);
  }
  if (out.empty()) bad_field(field, "must name at least one perspective");
  return out;
}

void apply_key(CampaignConfig& c, const std::string& key,
               const std::string& value) {
  if (key == "endpoint.base_url") c.endpoint.base_url = value;
  else if (key == "endpoint.model") c.endpoint.model = value;
  else if (key == "endpoint.api_key_env") c.endpoint.api_key_env = value;
  else if (key == "generator_endpoint.base_url") c.generator_endpoint.base_url = value;
  else if (key == "generator_endpoint.model") c.generator_endpoint.model = value;
  else if (key == "generator_endpoint.api_key_env") c.generator_endpoint.api_key_env = value;
  else if (key == "base_instruction") c.base_instruction = value;
  else if (key == "temperature") c.temperature = parse_real(key, value);
  else if (key == "top_p") c.top_p = parse_real(key, value);
  else if (key == "max_tokens") c.max_tokens = static_cast<int>(parse_int(key, value));
  else if (key == "samples_per_question") c.samples_per_question = static_cast<int>(parse_int(key, value));
  else if (key == "candidates_per_perspective") c.candidates_per_perspective = static_cast<int>(parse_int(key, value));
  else if (key == "top_k") c.top_k = static_cast<int>(parse_int(key, value));
  else if (key == "tolerance") c.tolerance = parse_real(key, value);
  else if (key == "iterations") c.iterations = static_cast<int>(parse_int(key, value));
  else if (key == "perspectives") c.perspectives = parse_perspectives(key, value);
  else if (key == "max_in_flight") c.max_in_flight = static_cast<int>(parse_int(key, value));
  else if (key == "seed") c.seed = parse_int(key, value);
  else throw Error(ErrorClass::kConfig, "unknown config key \"" + key + "\"");
}

}  // namespace

CampaignConfig parse_config_text(const std::string& text) {
  CampaignConfig config;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorClass::kConfig,
                  "config line " + std::to_string(line_no) +
                      ": expected key = value");
    }
    apply_key(config, trim(stripped.substr(0, eq)),
              trim(stripped.substr(eq + 1)));
  }
  validate_config(config);
  return config;
}

CampaignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorClass::kConfig, "cannot open config file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate_config(const CampaignConfig& config) {
  if (config.temperature < 0) bad_field("temperature", "must be >= 0");
  if (!(config.top_p > 0 && config.top_p <= 1)) {
    bad_field("top_p", "must be in (0, 1]");
  }
  if (config.max_tokens < 1) bad_field("max_tokens", "must be >= 1");
  if (config.samples_per_question < 1) {
    bad_field("samples_per_question", "must be >= 1");
  }
  if (config.candidates_per_perspective < 1) {
    bad_field("candidates_per_perspective", "must be >= 1");
  }
  if (config.top_k < 1) bad_field("top_k", "must be >= 1");
  if (config.tolerance < 0) bad_field("tolerance", "must be >= 0");
  if (config.iterations < 1) bad_field("iterations", "must be >= 1");
  if (config.perspectives.empty()) {
    bad_field("perspectives", "must name at least one perspective");
  }
  if (config.max_in_flight < 1) bad_field("max_in_flight", "must be >= 1");
  const std::int64_t budget =
      static_cast<std::int64_t>(config.candidates_per_perspective) *
      static_cast<std::int64_t>(config.perspectives.size());
  if (config.top_k > budget) {
    bad_field("top_k", "exceeds the per-iteration candidate budget (" +
                           std::to_string(budget) + ")");
  }
  if (config.base_instruction.empty()) {
    bad_field("base_instruction", "must be non-empty");
  }
}

namespace {

Json endpoint_to_json(const EndpointConfig& e) {
  return Json{{"base_url", e.base_url},
              {"model", e.model},
              {"api_key_env", e.api_key_env}};
}

EndpointConfig endpoint_from_json(const Json& j) {
  EndpointConfig e;
  e.base_url = j.at("base_url").get<std::string>();
  e.model = j.at("model").get<std::string>();
  e.api_key_env = j.at("api_key_env").get<std::string>();
  return e;
}

}  // namespace

Json to_json(const CampaignConfig& config) {
  std::vector<std::string> names;
  names.reserve(config.perspectives.size());
  for (Perspective p : config.perspectives) names.push_back(perspective_name(p));
  return Json{{"endpoint", endpoint_to_json(config.endpoint)},
              {"generator_endpoint", endpoint_to_json(config.generator_endpoint)},
              {"base_instruction", config.base_instruction},
              {"temperature", config.temperature},
              {"top_p", config.top_p},
              {"max_tokens", config.max_tokens},
              {"samples_per_question", config.samples_per_question},
              {"candidates_per_perspective", config.candidates_per_perspective},
              {"top_k", config.top_k},
              {"tolerance", config.tolerance},
              {"iterations", config.iterations},
              {"perspectives", names},
              {"max_in_flight", config.max_in_flight},
              {"seed", config.seed}};
}

CampaignConfig config_from_json(const Json& j) {
  CampaignConfig c;
  c.endpoint = endpoint_from_json(j.at("endpoint"));
  c.generator_endpoint = endpoint_from_json(j.at("generator_endpoint"));
  c.base_instruction = j.at("base_instruction").get<std::string>();
  c.temperature = j.at("temperature").get<double>();
  c.top_p = j.at("top_p").get<double>();
  c.max_tokens = j.at("max_tokens").get<int>();
  c.samples_per_question = j.at("samples_per_question").get<int>();
  c.candidates_per_perspective = j.at("candidates_per_perspective").get<int>();
  c.top_k = j.at("top_k").get<int>();
  c.tolerance = j.at("tolerance").get<double>();
  c.iterations = j.at("iterations").get<int>();
  c.perspectives.clear();
  for (const auto& name : j.at("perspectives")) {
    c.perspectives.push_back(perspective_from_name(name.get<std::string>()));
  }
  c.max_in_flight = j.at("max_in_flight").get<int>();
  c.seed = j.at("seed").get<std::int64_t>();
  validate_config(c);
  return c;
}

}  // namespace cpo
