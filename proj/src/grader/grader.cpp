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

#include "grader/grader.hpp"

#include <cctype>

#include <boost/multiprecision/cpp_int.hpp>

namespace cpo {

namespace {

using BigInt = boost::multiprecision::cpp_int;

constexpr const char kBoxedMarker[] = "\\boxed{";
constexpr size_t kBoxedMarkerLen = sizeof(kBoxedMarker) - 1;

// Returns the contents of the group opened at `open` (index of '{'), or
// nullopt when braces never balance before the end of text.
std::optional<std::string> match_group(const std::string& text, size_t open) {
  int depth = 0;
  for (size_t i = open; i < text.size(); ++i) {
    if (text[i] == '{') {
      ++depth;
    } else if (text[i] == '}') {
      --depth;
      if (depth == 0) return text.substr(open + 1, i - open - 1);
    }
  }
  return std::nullopt;
}

struct BoxedScan {
  std::optional<std::string> content;
  bool saw_marker = false;
};

BoxedScan scan_boxed(const std::string& text) {
  BoxedScan result;
  size_t pos = text.rfind(kBoxedMarker);
  while (pos != std::string::npos) {
    result.saw_marker = true;
    if (auto group = match_group(text, pos + kBoxedMarkerLen - 1)) {
      result.content = std::move(group);
      return result;
    }
    if (pos == 0) break;
    pos = text.rfind(kBoxedMarker, pos - 1);
  }
  return result;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// One rewriting pass; normalize_answer iterates this to a fixed point.
std::string normalize_pass(const std::string& input) {
  std::string s;
  // Trim and collapse internal whitespace in a single sweep.
  {
    s.reserve(input.size());
    bool pending_space = false;
    for (char c : input) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!s.empty()) pending_space = true;
      } else {
        if (pending_space) s += ' ';
        pending_space = false;
        s += c;
      }
    }
  }
  // Strip a matched $...$ wrapper.
  while (s.size() >= 2 && s.front() == '$' && s.back() == '$') {
    s = s.substr(1, s.size() - 2);
  }
  // Unwrap \text{...} when it spans the whole string.
  constexpr const char kTextMarker[] = "\\text{";
  constexpr size_t kTextLen = sizeof(kTextMarker) - 1;
  if (s.rfind(kTextMarker, 0) == 0 && !s.empty() && s.back() == '}') {
    if (auto inner = match_group(s, kTextLen - 1);
        inner && kTextLen + inner->size() + 1 == s.size()) {
      s = *inner;
    }
  }
  // Remove thousands commas (digit,digit).
  {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == ',' && i > 0 && i + 1 < s.size() && is_digit(s[i - 1]) &&
          is_digit(s[i + 1])) {
        continue;
      }
      out += s[i];
    }
    s = std::move(out);
  }
  // Strip trailing periods and percent signs.
  while (!s.empty() && (s.back() == '.' || s.back() == '%')) s.pop_back();
  return s;
}

struct Rational {
  BigInt num;
  BigInt den;  // > 0, fraction reduced
};

void reduce(Rational& r) {
  if (r.den < 0) {
    r.num = -r.num;
    r.den = -r.den;
  }
  BigInt g = boost::multiprecision::gcd(r.num < 0 ? BigInt(-r.num) : r.num,
                                        r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
}

// "123", "3.14", ".5" with optional leading '-'. Whole-string match only.
std::optional<Rational> parse_plain_number(const std::string& s) {
  size_t i = 0;
  bool negative = false;
  if (i < s.size() && s[i] == '-') {
    negative = true;
    ++i;
  }
  std::string int_digits, frac_digits;
  while (i < s.size() && is_digit(s[i])) int_digits += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) frac_digits += s[i++];
  }
  if (i != s.size()) return std::nullopt;
  if (int_digits.empty() && frac_digits.empty()) return std::nullopt;

  Rational r;
  r.num = 0;
  r.den = 1;
  for (char c : int_digits) r.num = r.num * 10 + (c - '0');
  for (char c : frac_digits) {
    r.num = r.num * 10 + (c - '0');
    r.den *= 10;
  }
  if (negative) r.num = -r.num;
  reduce(r);
  return r;
}

std::optional<Rational> parse_rational(const std::string& s);

std::optional<Rational> make_quotient(const std::optional<Rational>& num,
                                      const std::optional<Rational>& den,
                                      bool negate) {
  if (!num || !den || den->num == 0) return std::nullopt;
  Rational r;
  r.num = num->num * den->den;
  r.den = num->den * den->num;
  if (negate) r.num = -r.num;
  reduce(r);
  return r;
}

std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t start = 0;
  bool negate = false;
  if (s[0] == '-' && s.size() > 1 && s[1] == '\\') {
    negate = true;
    start = 1;
  }
  constexpr const char kFracMarker[] = "\\frac{";
  constexpr size_t kFracLen = sizeof(kFracMarker) - 1;
  if (s.compare(start, kFracLen, kFracMarker) == 0) {
    auto num_group = match_group(s, start + kFracLen - 1);
    if (!num_group) return std::nullopt;
    size_t den_open = start + kFracLen + num_group->size() + 1;
    if (den_open >= s.size() || s[den_open] != '{') return std::nullopt;
    auto den_group = match_group(s, den_open);
    if (!den_group) return std::nullopt;
    if (den_open + den_group->size() + 2 != s.size()) return std::nullopt;
    return make_quotient(parse_plain_number(*num_group),
                         parse_plain_number(*den_group), negate);
  }
  if (size_t slash = s.find('/'); slash != std::string::npos) {
    return make_quotient(parse_plain_number(s.substr(0, slash)),
                         parse_plain_number(s.substr(slash + 1)), false);
  }
  return parse_plain_number(s);
}

}  // namespace

const char* grade_failure_name(GradeFailure f) {
  switch (f) {
    case GradeFailure::kNoBoxed: return "no_boxed";
    case GradeFailure::kUnbalancedBraces: return "unbalanced_braces";
  }
  return "no_boxed";
}

std::optional<std::string> extract_boxed(const std::string& response_text) {
  return scan_boxed(response_text).content;
}

std::string normalize_answer(const std::string& raw) {
  std::string current = raw;
  // Each pass only removes characters, so this terminates.
  for (;;) {
    std::string next = normalize_pass(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

bool answers_equivalent(const std::string& a, const std::string& b) {
  const std::string na = normalize_answer(a);
  const std::string nb = normalize_answer(b);
  if (na == nb) return true;
  auto ra = parse_rational(na);
  if (!ra) return false;
  auto rb = parse_rational(nb);
  if (!rb) return false;
  return ra->num == rb->num && ra->den == rb->den;
}

GradeResult grade(const std::string& response_text,
                  const std::string& ground_truth) {
  GradeResult result;
  BoxedScan scan = scan_boxed(response_text);
  if (!scan.content) {
    result.failure_kind = scan.saw_marker ? GradeFailure::kUnbalancedBraces
                                          : GradeFailure::kNoBoxed;
    return result;
  }
  result.extracted = normalize_answer(*scan.content);
  result.correct = answers_equivalent(*result.extracted, ground_truth);
  return result;
}

}  // namespace cpo
