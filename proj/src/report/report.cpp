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

#include "report/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "core/error.hpp"

namespace cpo {

double round_half_up_1dp(double value) {
  return std::floor(value * 10.0 + 0.5) / 10.0;
}

std::string format_pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", round_half_up_1dp(fraction * 100.0));
  return buf;
}

std::string format_tok(double tokens) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", round_half_up_1dp(tokens));
  return buf;
}

namespace {

ReportRow make_row(const std::string& label, double acc_fraction, double tok,
                   std::optional<double> ratio_fraction) {
  ReportRow row;
  row.label = label;
  row.acc = round_half_up_1dp(acc_fraction * 100.0);
  row.tok = round_half_up_1dp(tok);
  if (ratio_fraction) row.ratio = round_half_up_1dp(*ratio_fraction * 100.0);
  return row;
}

bool has_approximated(const std::vector<EvalRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const EvalRecord& r) {
    return r.token_source == TokenSource::kApproximated;
  });
}

// Best (lowest l_avg) tolerance-passing score per iteration; falls back to
// the overall best when nothing passed.
const CandidateScore* iteration_best_ratio(const IterationState& it,
                                           bool* only_failing) {
  const CandidateScore* best_passing = nullptr;
  const CandidateScore* best_any = nullptr;
  for (const CandidateScore& s : it.scores) {
    if (best_any == nullptr || score_ranks_before(s, *best_any)) best_any = &s;
    if (s.passed_tolerance &&
        (best_passing == nullptr || score_ranks_before(s, *best_passing))) {
      best_passing = &s;
    }
  }
  *only_failing = best_passing == nullptr && best_any != nullptr;
  return best_passing != nullptr ? best_passing : best_any;
}

}  // namespace

Report build_report(const RunLedger& ledger, const RunLedger* compare) {
  Report report;
  report.any_approximated_tokens = has_approximated(ledger.baseline_records);

  // Overview: baseline and, when elected, the final prompt.
  {
    ReportSection overview;
    overview.name = "overview";
    if (ledger.baseline) {
      overview.rows.push_back(make_row("baseline (original)",
                                       ledger.baseline->acc_avg,
                                       ledger.baseline->l_avg, 1.0));
    } else {
      overview.gaps.push_back("baseline not measured yet");
    }
    if (ledger.final_result) {
      const Json& f = *ledger.final_result;
      const CandidateScore score = score_from_json(f.at("score"));
      overview.rows.push_back(
          make_row("final " + f.at("final_candidate_id").get<std::string>(),
                   score.acc_avg, score.l_avg, score.compression_ratio));
    } else {
      overview.gaps.push_back("no final prompt elected yet");
    }
    report.sections.push_back(std::move(overview));
  }

  // Top-5 tolerance-passing candidates per perspective, campaign-wide.
  std::map<std::string, Perspective> perspective_of;
  for (const IterationState& it : ledger.iterations) {
    report.any_approximated_tokens |= has_approximated(it.records);
    for (const PromptCandidate& c : it.candidates) {
      perspective_of[c.id] = c.perspective;
    }
  }
  for (Perspective p : ledger.config.perspectives) {
    ReportSection section;
    section.name = std::string("perspective ") + perspective_name(p) +
                   " top-5";
    std::vector<CandidateScore> passing;
    bool any_unscored = false;
    for (const IterationState& it : ledger.iterations) {
      if (!it.scored) {
        any_unscored = true;
        continue;
      }
      for (const CandidateScore& s : it.scores) {
        auto found = perspective_of.find(s.candidate_id);
        if (found == perspective_of.end() || found->second != p) continue;
        if (s.passed_tolerance) passing.push_back(s);
      }
    }
    std::sort(passing.begin(), passing.end(), score_ranks_before);
    if (passing.size() > 5) passing.resize(5);
    for (const CandidateScore& s : passing) {
      section.rows.push_back(
          make_row(s.candidate_id, s.acc_avg, s.l_avg, s.compression_ratio));
    }
    if (passing.empty()) {
      section.gaps.push_back("no tolerance-passing candidates");
    }
    if (any_unscored) {
      section.gaps.push_back("some iterations not scored yet");
    }
    report.sections.push_back(std::move(section));
  }

  // Per-iteration series.
  {
    ReportSection best_ratio;
    best_ratio.name = "iteration best ratio";
    ReportSection best_acc;
    best_acc.name = "iteration best accuracy";
    for (const IterationState& it : ledger.iterations) {
      const std::string label = "iteration " + std::to_string(it.index);
      if (!it.scored) {
        best_ratio.gaps.push_back(label + ": scores missing");
        best_acc.gaps.push_back(label + ": scores missing");
        continue;
      }
      bool only_failing = false;
      if (const CandidateScore* s = iteration_best_ratio(it, &only_failing)) {
        ReportRow row = make_row(label + " (" + s->candidate_id + ")",
                                 s->acc_avg, s->l_avg, s->compression_ratio);
        best_ratio.rows.push_back(std::move(row));
        if (only_failing) {
          best_ratio.gaps.push_back(label +
                                    ": no candidate passed tolerance");
        }
      }
      const CandidateScore* top = nullptr;
      for (const CandidateScore& s : it.scores) {
        if (top == nullptr || s.acc_avg > top->acc_avg) top = &s;
      }
      if (top != nullptr) {
        best_acc.rows.push_back(make_row(label + " (" + top->candidate_id +
                                              ")",
                                          top->acc_avg, top->l_avg,
                                          top->compression_ratio));
      }
    }
    report.sections.push_back(std::move(best_ratio));
    report.sections.push_back(std::move(best_acc));
  }

  // Token-usage correlation against a second run, paired by candidate text.
  if (compare != nullptr) {
    std::map<std::string, double> mine;
    for (const IterationState& it : ledger.iterations) {
      for (const PromptCandidate& c : it.candidates) {
        for (const CandidateScore& s : it.scores) {
          if (s.candidate_id == c.id) mine[c.text] = s.l_avg;
        }
      }
    }
    std::vector<std::pair<double, double>> pairs;
    for (const IterationState& it : compare->iterations) {
      for (const PromptCandidate& c : it.candidates) {
        auto found = mine.find(c.text);
        if (found == mine.end()) continue;
        for (const CandidateScore& s : it.scores) {
          if (s.candidate_id == c.id) {
            pairs.emplace_back(found->second, s.l_avg);
          }
        }
      }
    }
    try {
      report.correlation = pdset_benchmark_correlation(pairs);
    } catch (const Error& e) {
      report.correlation_gap = e.what();
    }
  }
  return report;
}

std::string render_report_text(const Report& report) {
  std::string out;
  for (const ReportSection& section : report.sections) {
    out += "== " + section.name + " ==\n";
    size_t width = 5;
    for (const ReportRow& row : section.rows) {
      width = std::max(width, row.label.size());
    }
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-*s  %7s  %10s  %7s\n",
                  static_cast<int>(width), "label", "acc", "tok", "ratio");
    out += buf;
    for (const ReportRow& row : section.rows) {
      const std::string ratio =
          row.ratio ? format_tok(*row.ratio) + "%" : std::string("-");
      std::snprintf(buf, sizeof(buf), "%-*s  %7.1f  %10.1f  %7s\n",
                    static_cast<int>(width), row.label.c_str(), row.acc,
                    row.tok, ratio.c_str());
      out += buf;
    }
    for (const std::string& gap : section.gaps) {
      out += "  (" + gap + ")\n";
    }
    out += '\n';
  }
  if (report.correlation) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "== token-usage correlation ==\nslope=%.6f intercept=%.6f "
                  "r_squared=%.6f pairs=%zu\n\n",
                  report.correlation->slope, report.correlation->intercept,
                  report.correlation->r_squared, report.correlation->n_pairs);
    out += buf;
  } else if (report.correlation_gap) {
    out += "== token-usage correlation ==\n  (" + *report.correlation_gap +
           ")\n\n";
  }
  if (report.any_approximated_tokens) {
    out += "note: some token counts were approximated as ceil(chars/4); the "
           "endpoint did not report usage\n";
  }
  return out;
}

Json report_summary_json(const Report& report) {
  Json sections = Json::array();
  for (const ReportSection& section : report.sections) {
    Json rows = Json::array();
    for (const ReportRow& row : section.rows) {
      rows.push_back(Json{{"label", row.label},
                          {"acc", row.acc},
                          {"tok", row.tok},
                          {"ratio", row.ratio ? Json(*row.ratio) : Json(nullptr)}});
    }
    sections.push_back(Json{{"name", section.name},
                            {"rows", rows},
                            {"gaps", section.gaps}});
  }
  Json j{{"sections", sections},
         {"approximated_tokens", report.any_approximated_tokens}};
  if (report.correlation) {
    j["correlation"] = Json{{"slope", report.correlation->slope},
                            {"intercept", report.correlation->intercept},
                            {"r_squared", report.correlation->r_squared},
                            {"n_pairs", report.correlation->n_pairs}};
  } else {
    j["correlation"] = nullptr;
  }
  return j;
}

void write_report_files(const Report& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "report.txt", std::ios::trunc);
    if (!out) {
      throw Error(ErrorClass::kIo, "cannot write report.txt under " + out_dir);
    }
    out << render_report_text(report);
  }
  {
    std::ofstream out(fs::path(out_dir) / "report.summary.json",
                      std::ios::trunc);
    if (!out) {
      throw Error(ErrorClass::kIo,
                  "cannot write report.summary.json under " + out_dir);
    }
    out << report_summary_json(report).dump(2) << '\n';
  }
}

}  // namespace cpo
