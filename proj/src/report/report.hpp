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

#ifndef CPO_REPORT_REPORT_HPP_
#define CPO_REPORT_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "orchestrator/ledger.hpp"
#include "scoring/scoring.hpp"

namespace cpo {

// Percentages render with one decimal, rounded half-up.
double round_half_up_1dp(double value);
std::string format_pct(double fraction);  // 0.2806 -> "28.1%"
std::string format_tok(double tokens);

struct ReportRow {
  std::string label;
  double acc = 0.0;                  // percentage, one decimal
  double tok = 0.0;                  // mean tokens, one decimal
  std::optional<double> ratio;       // percentage, one decimal
};

struct ReportSection {
  std::string name;
  std::vector<ReportRow> rows;
  std::vector<std::string> gaps;  // explicit holes in partial runs
};

struct Report {
  std::vector<ReportSection> sections;
  std::optional<CorrelationFit> correlation;
  std::optional<std::string> correlation_gap;
  bool any_approximated_tokens = false;
};

// Pure view over the ledger; never triggers model calls. `compare` adds the
// token-usage correlation section, pairing candidates by exact text.
Report build_report(const RunLedger& ledger, const RunLedger* compare);

std::string render_report_text(const Report& report);
Json report_summary_json(const Report& report);

// Writes report.txt and report.summary.json under out_dir.
void write_report_files(const Report& report, const std::string& out_dir);

}  // namespace cpo

#endif  // CPO_REPORT_REPORT_HPP_
