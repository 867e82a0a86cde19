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

#include "orchestrator/campaign.hpp"
#include "report/report.hpp"
#include "support/test_util.hpp"

using namespace cpo;

namespace {

PromptCandidate make_candidate(const std::string& id, Perspective p,
                               const std::string& text, int iteration) {
  PromptCandidate c;
  c.id = id;
  c.perspective = p;
  c.text = text;
  c.iteration = iteration;
  return c;
}

CandidateScore make_score(const std::string& id, double l_avg, double acc,
                          double baseline_l, bool passed = true) {
  CandidateScore s;
  s.candidate_id = id;
  s.l_avg = l_avg;
  s.acc_avg = acc;
  s.n_records = 10;
  s.compression_ratio = l_avg / baseline_l;
  s.passed_tolerance = passed;
  return s;
}

// Two iterations, two perspectives, baseline 1568 tokens at 95.9%.
RunLedger synthetic_ledger() {
  RunLedger ledger;
  ledger.backend = "mock";
  ledger.config.perspectives = {Perspective::kEvidence, Perspective::kThreat};
  ledger.pdset = testutil::arithmetic_dataset(5);

  for (int s = 0; s < 2; ++s) {
    EvalRecord r;
    r.candidate_id = kBaselineCandidateId;
    r.question_id = "q";
    r.sample_index = s;
    r.completion_tokens = 1568;
    r.correct = true;
    ledger.baseline_records.push_back(r);
  }
  ledger.baseline = score_candidate(ledger.baseline_records);

  IterationState it0;
  it0.index = 0;
  it0.candidates = {
      make_candidate("i00-evidence-00", Perspective::kEvidence, "cite", 0),
      make_candidate("i00-threat-00", Perspective::kThreat, "or else", 0),
  };
  it0.scores = {make_score("i00-evidence-00", 600, 0.96, 1568),
                make_score("i00-threat-00", 900, 0.94, 1568)};
  it0.selected = {"i00-evidence-00", "i00-threat-00"};
  it0.scored = true;

  IterationState it1;
  it1.index = 1;
  it1.candidates = {
      make_candidate("i01-evidence-00", Perspective::kEvidence, "cite 2", 1),
      make_candidate("i01-threat-00", Perspective::kThreat, "or else 2", 1),
  };
  it1.scores = {make_score("i01-evidence-00", 440, 0.961, 1568),
                make_score("i01-threat-00", 950, 0.90, 1568, false)};
  it1.selected = {"i01-evidence-00"};
  it1.scored = true;

  ledger.iterations = {it0, it1};
  ledger.final_result =
      Json{{"final_candidate_id", "i01-evidence-00"},
           {"text", "cite 2"},
           {"perspective", "evidence"},
           {"iteration", 1},
           {"score", to_json(it1.scores[0])},
           {"baseline", to_json(*ledger.baseline)}};
  return ledger;
}

const ReportSection& section_named(const Report& report,
                                   const std::string& name) {
  for (const ReportSection& s : report.sections) {
    if (s.name == name) return s;
  }
  FAIL(("missing section " + name).c_str());
  static ReportSection unreachable;
  return unreachable;
}

}  // namespace

TEST_SUITE("report.rounding") {
  TEST_CASE("percentages round half-up to one decimal") {
    CHECK(format_pct(0.280612) == "28.1%");
    CHECK(format_pct(0.494997) == "49.5%");
    CHECK(format_pct(0.761231) == "76.1%");
    CHECK(format_pct(0.425324) == "42.5%");
    CHECK(format_pct(0.49945) == "49.9%");   // 49.945 -> 49.9
    CHECK(format_pct(0.49955) == "50.0%");   // 49.955 -> 50.0 (half-up)
    CHECK(format_pct(1.0) == "100.0%");
    CHECK(round_half_up_1dp(0.05) == doctest::Approx(0.1));
    CHECK(round_half_up_1dp(0.04999) == doctest::Approx(0.0));
  }
}

TEST_SUITE("report.structure") {
  TEST_CASE("sections, rows, and rounded values match the ledger") {
    const RunLedger ledger = synthetic_ledger();
    const Report report = build_report(ledger, nullptr);

    const ReportSection& overview = section_named(report, "overview");
    REQUIRE(overview.rows.size() == 2);
    CHECK(overview.rows[0].label == "baseline (original)");
    CHECK(overview.rows[0].tok == 1568.0);
    CHECK(overview.rows[0].ratio == 100.0);
    CHECK(overview.rows[1].label == "final i01-evidence-00");
    CHECK(overview.rows[1].tok == 440.0);
    CHECK(overview.rows[1].ratio == 28.1);  // 440/1568 rounded half-up
    CHECK(overview.rows[1].acc == 96.1);

    const ReportSection& evidence =
        section_named(report, "perspective evidence top-5");
    REQUIRE(evidence.rows.size() == 2);
    CHECK(evidence.rows[0].label == "i01-evidence-00");  // lowest l_avg first
    CHECK(evidence.rows[1].label == "i00-evidence-00");

    // The failing threat candidate is excluded from its top-5 table.
    const ReportSection& threat =
        section_named(report, "perspective threat top-5");
    REQUIRE(threat.rows.size() == 1);
    CHECK(threat.rows[0].label == "i00-threat-00");

    const ReportSection& best = section_named(report, "iteration best ratio");
    REQUIRE(best.rows.size() == 2);
    CHECK(best.rows[0].ratio == round_half_up_1dp(100.0 * 600 / 1568));
    CHECK(best.rows[1].ratio == 28.1);
    CHECK(best.rows[0].ratio >= *best.rows[1].ratio);

    const ReportSection& best_acc =
        section_named(report, "iteration best accuracy");
    REQUIRE(best_acc.rows.size() == 2);
    CHECK(best_acc.rows[0].label.find("i00-evidence-00") !=
          std::string::npos);
    CHECK(best_acc.rows[1].acc == 96.1);

    CHECK_FALSE(report.any_approximated_tokens);
  }

  TEST_CASE("rendering is regenerable byte-identically") {
    const RunLedger ledger = synthetic_ledger();
    const Report a = build_report(ledger, nullptr);
    const Report b = build_report(ledger, nullptr);
    CHECK(render_report_text(a) == render_report_text(b));
    CHECK(report_summary_json(a).dump() == report_summary_json(b).dump());
  }

  TEST_CASE("partial ledgers render explicit gaps") {
    RunLedger ledger = synthetic_ledger();
    ledger.final_result.reset();
    ledger.iterations[1].scored = false;
    ledger.iterations[1].scores.clear();
    const Report report = build_report(ledger, nullptr);
    const ReportSection& overview = section_named(report, "overview");
    REQUIRE(overview.gaps.size() == 1);
    CHECK(overview.gaps[0].find("final") != std::string::npos);
    const ReportSection& best = section_named(report, "iteration best ratio");
    CHECK(best.rows.size() == 1);
    REQUIRE(best.gaps.size() == 1);
    CHECK(best.gaps[0].find("iteration 1") != std::string::npos);
    const std::string text = render_report_text(report);
    CHECK(text.find("scores missing") != std::string::npos);
  }

  TEST_CASE("approximated token counts are footnoted") {
    RunLedger ledger = synthetic_ledger();
    ledger.baseline_records[0].token_source = TokenSource::kApproximated;
    const Report report = build_report(ledger, nullptr);
    CHECK(report.any_approximated_tokens);
    CHECK(render_report_text(report).find("approximated") !=
          std::string::npos);
    CHECK(report_summary_json(report).at("approximated_tokens") == true);
  }

  TEST_CASE("summary json mirrors the rendered rows") {
    const Report report = build_report(synthetic_ledger(), nullptr);
    const Json summary = report_summary_json(report);
    REQUIRE(summary.at("sections").is_array());
    const Json& overview = summary.at("sections")[0];
    CHECK(overview.at("name") == "overview");
    CHECK(overview.at("rows")[1].at("ratio") == 28.1);
    CHECK(overview.at("rows")[1].at("tok") == 440.0);
    CHECK(overview.at("rows")[1].at("acc") == 96.1);
    CHECK(summary.at("correlation").is_null());
  }
}

TEST_SUITE("report.correlation") {
  TEST_CASE("pairs by candidate text across two ledgers") {
    const RunLedger mine = synthetic_ledger();
    RunLedger other = synthetic_ledger();
    // Same texts, benchmark twice as long: exact line through the origin.
    for (IterationState& it : other.iterations) {
      for (CandidateScore& s : it.scores) s.l_avg *= 2.0;
    }
    // Need a third distinct x; widen the candidate pool.
    RunLedger mine3 = mine;
    RunLedger other3 = other;
    mine3.iterations[0].candidates.push_back(
        make_candidate("i00-evidence-01", Perspective::kEvidence, "extra", 0));
    mine3.iterations[0].scores.push_back(
        make_score("i00-evidence-01", 1000, 0.95, 1568));
    other3.iterations[0].candidates.push_back(
        make_candidate("i00-evidence-01", Perspective::kEvidence, "extra", 0));
    other3.iterations[0].scores.push_back(
        make_score("i00-evidence-01", 2000, 0.95, 1568));

    const Report report = build_report(mine3, &other3);
    REQUIRE(report.correlation);
    CHECK(report.correlation->slope == doctest::Approx(2.0));
    CHECK(report.correlation->intercept == doctest::Approx(0.0));
    CHECK(report.correlation->r_squared == 1.0);
    CHECK(report.correlation->n_pairs == 5);  // all shared candidate texts
  }

  TEST_CASE("too few shared candidates degrades to an explicit gap") {
    const RunLedger mine = synthetic_ledger();
    RunLedger other;
    other.config = mine.config;
    const Report report = build_report(mine, &other);
    CHECK_FALSE(report.correlation);
    REQUIRE(report.correlation_gap);
    CHECK(render_report_text(report).find("token-usage correlation") !=
          std::string::npos);
  }
}

TEST_SUITE("report.files") {
  TEST_CASE("report files land under the output directory") {
    testutil::TempDir tmp("report-files");
    const Report report = build_report(synthetic_ledger(), nullptr);
    write_report_files(report, tmp.str());
    const std::string text = testutil::read_file(tmp.path() / "report.txt");
    CHECK(text == render_report_text(report));
    const Json summary =
        Json::parse(testutil::read_file(tmp.path() / "report.summary.json"));
    CHECK(summary.dump() == report_summary_json(report).dump());
  }

  TEST_CASE("report over a real mock run has one section per perspective") {
    testutil::TempDir tmp("report-run");
    CampaignConfig config;  // five perspectives
    config.seed = 13;
    config.iterations = 2;
    config.samples_per_question = 1;
    Campaign campaign(config, testutil::arithmetic_dataset(4), tmp.str(), {});
    REQUIRE(campaign.run());

    const RunLedger ledger = load_ledger(tmp.str());
    const Report report = build_report(ledger, nullptr);
    int perspective_sections = 0;
    for (const ReportSection& s : report.sections) {
      if (s.name.rfind("perspective ", 0) == 0) {
        ++perspective_sections;
        CHECK(s.rows.size() <= 5);
      }
    }
    CHECK(perspective_sections == 5);

    // Monotone mock improvement: the best-ratio series never increases.
    const ReportSection& series =
        section_named(report, "iteration best ratio");
    REQUIRE(series.rows.size() == 2);
    CHECK(*series.rows[0].ratio >= *series.rows[1].ratio);
  }
}
