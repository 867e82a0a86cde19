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

#ifndef CPO_GRADER_GRADER_HPP_
#define CPO_GRADER_GRADER_HPP_

#include <optional>
#include <string>

namespace cpo {

enum class GradeFailure {
  kNoBoxed,
  kUnbalancedBraces,
};

struct GradeResult {
  std::optional<std::string> extracted;  // normalized predicted answer
  bool correct = false;
  std::optional<GradeFailure> failure_kind;
};

const char* grade_failure_name(GradeFailure f);

// Contents of the last balanced \boxed{...} occurrence; nested braces kept
// verbatim. Absent when there is no occurrence or none balances.
std::optional<std::string> extract_boxed(const std::string& response_text);

// Canonical answer form: trims, strips $ wrappers, unwraps \text{...},
// drops thousands commas, strips trailing periods/percent signs, collapses
// internal whitespace. Idempotent; everything else is left verbatim.
std::string normalize_answer(const std::string& raw);

// True iff normalized forms are string-equal or both parse as exact
// rationals (integers, finite decimals, \frac{p}{q}, p/q, leading '-') that
// are equal. Rational comparison is exact integer arithmetic.
bool answers_equivalent(const std::string& a, const std::string& b);

// extract_boxed -> normalize_answer -> answers_equivalent against the
// normalized ground truth.
GradeResult grade(const std::string& response_text,
                  const std::string& ground_truth);

}  // namespace cpo

#endif  // CPO_GRADER_GRADER_HPP_
