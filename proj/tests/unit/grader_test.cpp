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

#include <random>

#include "grader/grader.hpp"
#include "support/test_util.hpp"

using namespace cpo;

TEST_SUITE("grader.extract") {
  TEST_CASE("direct extraction") {
    CHECK(extract_boxed("so the answer is \\boxed{42}.") == "42");
  }

  TEST_CASE("balanced nested braces kept verbatim") {
    CHECK(extract_boxed("thus \\boxed{3^{2}} holds") == "3^{2}");
    CHECK(extract_boxed("\\boxed{\\frac{1}{2}}") == "\\frac{1}{2}");
    CHECK(extract_boxed("\\boxed{{a}{b}}") == "{a}{b}");
  }

  TEST_CASE("last occurrence wins") {
    CHECK(extract_boxed("first \\boxed{1} then \\boxed{2}") == "2");
    // Confirm the last-match rule by scanning occurrences directly.
    const std::string text = "\\boxed{a} mid \\boxed{b} end \\boxed{c}";
    std::vector<std::string> all;
    size_t pos = 0;
    while ((pos = text.find("\\boxed{", pos)) != std::string::npos) {
      size_t close = text.find('}', pos);
      all.push_back(text.substr(pos + 7, close - pos - 7));
      pos = close;
    }
    REQUIRE(all.size() == 3);
    CHECK(extract_boxed(text) == all.back());
  }

  TEST_CASE("absence is a value") {
    CHECK(!extract_boxed("no boxed answer here"));
    CHECK(!extract_boxed(""));
    CHECK(!extract_boxed("\\boxed{never closes"));
  }

  TEST_CASE("earlier balanced occurrence used when the last never closes") {
    CHECK(extract_boxed("\\boxed{7} and \\boxed{oops") == "7");
  }

  TEST_CASE("never throws on brace soup") {
    std::mt19937_64 rng(77);
    const std::string alphabet = "{}\\boxed{}{}x";
    for (int i = 0; i < 5000; ++i) {
      std::string s = testutil::random_ascii(rng, 40, alphabet);
      CHECK_NOTHROW(extract_boxed(s));
      CHECK_NOTHROW(grade(s, "42"));
    }
  }
}

TEST_SUITE("grader.normalize") {
  TEST_CASE("golden normalizations") {
    CHECK(normalize_answer(" $1,234$ ") == "1234");
    CHECK(normalize_answer("\\text{east}") == "east");
    CHECK(normalize_answer("0.50.") == "0.50");
    CHECK(normalize_answer("  42  ") == "42");
    CHECK(normalize_answer("50%") == "50");
    CHECK(normalize_answer("$$7$$") == "7");
    CHECK(normalize_answer("1,000,000") == "1000000");
    CHECK(normalize_answer("a   b\tc") == "a b c");
    CHECK(normalize_answer("\\text{ two words }") == "two words");
    CHECK(normalize_answer("\\text{$5$}") == "5");
    CHECK(normalize_answer("100%.") == "100");
    CHECK(normalize_answer("") == "");
    CHECK(normalize_answer("$") == "$");
    // Commas that are not thousands separators survive.
    CHECK(normalize_answer("(1, 2)") == "(1, 2)");
  }

  TEST_CASE("idempotent on random inputs") {
    std::mt19937_64 rng(123);
    const std::string alphabet = "0123456789,.% $\\{}textabc-/";
    for (int i = 0; i < 5000; ++i) {
      const std::string s = testutil::random_ascii(rng, 24, alphabet);
      const std::string once = normalize_answer(s);
      CHECK(normalize_answer(once) == once);
    }
  }
}

TEST_SUITE("grader.equivalence") {
  TEST_CASE("golden equivalences") {
    CHECK(answers_equivalent("\\frac{1}{2}", "0.5"));
    CHECK(answers_equivalent("x+1", "x+1"));
    CHECK_FALSE(answers_equivalent("3.14", "\\frac{22}{7}"));
    CHECK(answers_equivalent("\\frac{22}{7}", "22/7"));
    CHECK(answers_equivalent("-\\frac{1}{2}", "-0.5"));
    CHECK(answers_equivalent("\\frac{-1}{2}", "-1/2"));
    CHECK(answers_equivalent("1,234", "1234"));
    CHECK(answers_equivalent("3.140", "3.14"));
    CHECK(answers_equivalent("$18$", "18"));
    CHECK(answers_equivalent("72.", "72"));
    CHECK(answers_equivalent("0.25", "1/4"));
    CHECK_FALSE(answers_equivalent("0.333", "1/3"));
    CHECK_FALSE(answers_equivalent("x+1", "x+2"));
    CHECK_FALSE(answers_equivalent("1/0", "2/0"));  // not rationals
    CHECK(answers_equivalent("-0", "0"));
    CHECK(answers_equivalent("007", "7"));
    CHECK_FALSE(answers_equivalent("", "0"));
  }

  TEST_CASE("exactness beyond double precision") {
    // Differ only in the 20th digit; doubles would conflate them.
    CHECK_FALSE(answers_equivalent("10000000000000000001/3",
                                   "10000000000000000000/3"));
    CHECK(answers_equivalent("10000000000000000001/3",
                             "\\frac{10000000000000000001}{3}"));
  }

  TEST_CASE("reflexive and symmetric over random inputs") {
    std::mt19937_64 rng(321);
    const std::string alphabet = "0123456789./\\frac{}-x+ ";
    for (int i = 0; i < 10000; ++i) {
      const std::string a = testutil::random_ascii(rng, 16, alphabet);
      const std::string b = testutil::random_ascii(rng, 16, alphabet);
      CHECK(answers_equivalent(a, a));
      CHECK(answers_equivalent(a, b) == answers_equivalent(b, a));
    }
  }

  TEST_CASE("transitive on the rational subset") {
    const std::vector<std::array<std::string, 3>> triples = {
        {"1/2", "0.5", "\\frac{2}{4}"},
        {"-3", "-3.0", "\\frac{-6}{2}"},
        {"0.75", "3/4", "\\frac{75}{100}"},
    };
    for (const auto& [a, b, c] : triples) {
      CHECK(answers_equivalent(a, b));
      CHECK(answers_equivalent(b, c));
      CHECK(answers_equivalent(a, c));
    }
  }
}

TEST_SUITE("grader.grade") {
  TEST_CASE("composition over boxed responses") {
    GradeResult r = grade("... the total is \\boxed{72}", "72");
    CHECK(r.correct);
    CHECK(r.extracted == "72");
    CHECK(!r.failure_kind);

    r = grade("\\boxed{\\frac{22}{7}}", "22/7");
    CHECK(r.correct);

    r = grade("\\boxed{$1,234$}", "1234");
    CHECK(r.correct);

    r = grade("\\boxed{41}", "42");
    CHECK_FALSE(r.correct);
    CHECK(r.extracted == "41");
  }

  TEST_CASE("missing boxed answer grades incorrect with failure kind") {
    GradeResult r = grade("no boxed answer here", "72");
    CHECK_FALSE(r.correct);
    CHECK(!r.extracted);
    REQUIRE(r.failure_kind);
    CHECK(*r.failure_kind == GradeFailure::kNoBoxed);
    CHECK(std::string(grade_failure_name(*r.failure_kind)) == "no_boxed");
  }

  TEST_CASE("unbalanced braces reported distinctly") {
    GradeResult r = grade("\\boxed{1+{2", "3");
    CHECK_FALSE(r.correct);
    REQUIRE(r.failure_kind);
    CHECK(*r.failure_kind == GradeFailure::kUnbalancedBraces);
    CHECK(std::string(grade_failure_name(*r.failure_kind)) ==
          "unbalanced_braces");
  }

  TEST_CASE("ground truth is normalized too") {
    CHECK(grade("\\boxed{42}", " $42$ ").correct);
    CHECK(grade("\\boxed{east}", "\\text{east}").correct);
  }
}
