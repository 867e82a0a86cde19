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

#include <doctest.h>

#include <map>
#include <random>

#include "core/compose.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "core/types.hpp"
#include "support/test_util.hpp"

using namespace cpo;

TEST_SUITE("core.perspective") {
  TEST_CASE("wire names round-trip through the exact lowercase spellings") {
    const std::map<Perspective, std::string> expected = {
        {Perspective::kEmotionalAppeal, "emotion"},
        {Perspective::kThreat, "threat"},
        {Perspective::kEvidence, "evidence"},
        {Perspective::kRolePlay, "roleplay"},
        {Perspective::kInstruction, "instruction"},
    };
    CHECK(kAllPerspectives.size() == 5);
    for (Perspective p : kAllPerspectives) {
      const std::string name = perspective_name(p);
      CHECK(name == expected.at(p));
      CHECK(perspective_from_name(name) == p);
    }
    CHECK_THROWS_AS(perspective_from_name("Emotion"), Error);
    CHECK_THROWS_AS(perspective_from_name("role-play"), Error);
  }
}

TEST_SUITE("core.compose") {
  static const std::string kIns =
      "Please reason step by step, and put your final answer within "
      "\\boxed{}.";

  TEST_CASE("no suffix appends instruction after a newline") {
    CHECK(compose_user_message("What is 2+3?", kIns, std::nullopt) ==
          "What is 2+3?\n" + kIns);
  }

  TEST_CASE("suffix joins with a single space") {
    CHECK(compose_user_message("q", kIns, std::string("Be concise.")) ==
          "q\n" + kIns + " Be concise.");
  }

  TEST_CASE("empty question rejected") {
    CHECK_THROWS_AS(compose_user_message("", kIns, std::nullopt), Error);
  }

  TEST_CASE("blank suffix rejected") {
    CHECK_THROWS_AS(compose_user_message("q", kIns, std::string("")), Error);
    CHECK_THROWS_AS(compose_user_message("q", kIns, std::string("  \t")),
                    Error);
  }

  TEST_CASE("injective over newline-free questions and distinct suffixes") {
    std::mt19937_64 rng(2024);
    std::map<std::string, std::pair<std::string, std::string>> seen;
    const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyz opqrstuvwxyz0123456789";
    for (int i = 0; i < 2000; ++i) {
      std::string q = "q" + testutil::random_ascii(rng, 12, alphabet);
      std::string s = "s" + testutil::random_ascii(rng, 12, alphabet);
      const std::string composed = compose_user_message(q, kIns, s);
      auto [it, inserted] = seen.emplace(composed, std::make_pair(q, s));
      if (!inserted) {
        CHECK(it->second.first == q);
        CHECK(it->second.second == s);
      }
    }
  }
}

TEST_SUITE("core.config") {
  TEST_CASE("empty config text yields the standard defaults") {
    const CampaignConfig c = parse_config_text("");
    CHECK(c.temperature == doctest::Approx(0.6));
    CHECK(c.top_p == doctest::Approx(0.95));
    CHECK(c.max_tokens == 16384);
    CHECK(c.tolerance == doctest::Approx(1.0));
    CHECK(c.top_k == 5);
    CHECK(c.iterations == 3);
    CHECK(c.candidates_per_perspective == 10);
    CHECK(c.samples_per_question == 3);
    CHECK(c.perspectives.size() == 5);
    CHECK(c.base_instruction ==
          "Please reason step by step, and put your final answer within "
          "\\boxed{}.");
  }

  TEST_CASE("values parse and comments are skipped") {
    const CampaignConfig c = parse_config_text(
        "# campaign\n"
        "seed = 42\n"
        "temperature = 0.2\n"
        "perspectives = evidence, roleplay\n"
        "endpoint.base_url = http://example:9\n"
        "endpoint.model = m1\n"
        "generator_endpoint.api_key_env = GEN_KEY\n"
        "top_k = 4\n");
    CHECK(c.seed == 42);
    CHECK(c.temperature == doctest::Approx(0.2));
    CHECK(c.perspectives ==
          std::vector<Perspective>{Perspective::kEvidence,
                                   Perspective::kRolePlay});
    CHECK(c.endpoint.base_url == "http://example:9");
    CHECK(c.endpoint.model == "m1");
    CHECK(c.generator_endpoint.api_key_env == "GEN_KEY");
    CHECK(c.top_k == 4);
  }

  TEST_CASE("violations name the field") {
    auto message_of = [](const std::string& text) {
      try {
        parse_config_text(text);
      } catch (const Error& e) {
        CHECK(e.cls() == ErrorClass::kConfig);
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message_of("top_p = 1.5").find("top_p") != std::string::npos);
    CHECK(message_of("tolerance = -0.5").find("tolerance") !=
          std::string::npos);
    CHECK(message_of("temperature = -1").find("temperature") !=
          std::string::npos);
    CHECK(message_of("max_tokens = 0").find("max_tokens") !=
          std::string::npos);
    CHECK(message_of("iterations = 0").find("iterations") !=
          std::string::npos);
  }

  TEST_CASE("unknown keys are an error") {
    CHECK_THROWS_WITH_AS(parse_config_text("max_token = 5"),
                         doctest::Contains("unknown config key"), Error);
  }

  TEST_CASE("top_k must fit the per-iteration candidate budget") {
    CHECK_THROWS_WITH_AS(
        parse_config_text("perspectives = threat\n"
                          "candidates_per_perspective = 3\n"
                          "top_k = 4\n"),
        doctest::Contains("top_k"), Error);
    CHECK_NOTHROW(parse_config_text("perspectives = threat\n"
                                    "candidates_per_perspective = 4\n"
                                    "top_k = 4\n"));
  }

  TEST_CASE("missing config file is a config error") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/cpo.conf"), Error);
  }
}

TEST_SUITE("core.serialization") {
  TEST_CASE("candidate and config round-trip byte-identically") {
    PromptCandidate c;
    c.id = "i01-evidence-03";
    c.perspective = Perspective::kEvidence;
    c.text = "Cite one study. Be concise.";
    c.iteration = 1;
    c.parent_ids = {"i00-threat-00", "i00-evidence-01"};
    const std::string once = to_json(c).dump();
    CHECK(to_json(candidate_from_json(Json::parse(once))).dump() == once);

    CampaignConfig config;
    config.seed = 1234567;
    config.temperature = 0.7;
    config.perspectives = {Perspective::kThreat, Perspective::kInstruction};
    const std::string cfg_once = to_json(config).dump();
    CHECK(to_json(config_from_json(Json::parse(cfg_once))).dump() == cfg_once);

    QAItem item{"q7", "What is 1+1?", "2"};
    const std::string item_once = to_json(item).dump();
    CHECK(to_json(qa_item_from_json(Json::parse(item_once))).dump() ==
          item_once);
  }

  TEST_CASE("candidate validation rejects blank text") {
    PromptCandidate c;
    c.id = "x";
    c.text = "   ";
    CHECK_THROWS_AS(validate_candidate(c), Error);
  }
}
