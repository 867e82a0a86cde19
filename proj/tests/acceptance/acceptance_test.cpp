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

// Acceptance gate. Each criterion runs standalone, prints one PASS/FAIL
// line, and enforces its runtime budget. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "client/mock_client.hpp"
#include "grader/grader.hpp"
#include "orchestrator/campaign.hpp"
#include "report/report.hpp"
#include "scoring/scoring.hpp"
#include "support/test_util.hpp"

namespace {

using namespace cpo;
using Clock = std::chrono::steady_clock;

struct Criterion {
  int failures = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

int g_total_failures = 0;

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("unexpected exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  c.expect(elapsed < budget_seconds,
           "runtime " + std::to_string(elapsed) + "s exceeds budget");
  if (c.failures == 0) {
    std::printf("[PASS] criterion %d: %s (%.2fs)\n", number, name.c_str(),
                elapsed);
  } else {
    std::printf("[FAIL] criterion %d: %s (%.2fs) - %d check(s) failed; "
                "first: %s\n",
                number, name.c_str(), elapsed, c.failures,
                c.first_failure.c_str());
    ++g_total_failures;
  }
  std::fflush(stdout);
}

// ---------------------------------------------------------------------------
// 1. Printed-ratio regression on published (Tok, baseline Tok) pairs.

void criterion_ratio_regression(Criterion& c) {
  const struct {
    double tok, baseline, printed;
  } rows[] = {
      {440, 1568, 28.1},
      {2176, 4398, 49.5},
      {8659, 11375, 76.1},
      {655, 1540, 42.5},
  };
  for (const auto& row : rows) {
    const double pct = 100.0 * compression_ratio(row.tok, row.baseline);
    c.expect(std::abs(pct - row.printed) <= 0.05,
             "ratio " + std::to_string(pct) + " vs printed " +
                 std::to_string(row.printed));
    const double rendered = round_half_up_1dp(pct);
    c.expect(rendered == row.printed,
             "rendered " + std::to_string(rendered) + " vs " +
                 std::to_string(row.printed));
  }
}

// ---------------------------------------------------------------------------
// 2. Mean-aggregation oracle equivalence on randomized record sets.

void criterion_scoring_oracle(Criterion& c) {
  std::mt19937_64 rng(20250809);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + rng() % 300;
    std::vector<EvalRecord> records;
    records.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      EvalRecord r;
      r.candidate_id = "c";
      r.question_id = "q" + std::to_string(i % 100);
      r.sample_index = static_cast<int>(i / 100);
      r.completion_tokens = static_cast<std::int64_t>(rng() % 20000);
      r.correct = (rng() & 1) != 0;
      records.push_back(std::move(r));
    }
    // Independent brute-force pass.
    std::int64_t tokens = 0;
    std::int64_t correct = 0;
    for (const EvalRecord& r : records) {
      tokens += r.completion_tokens;
      if (r.correct) ++correct;
    }
    const CandidateScore s = score_candidate(records);
    const double n_d = static_cast<double>(n);
    c.expect(s.l_avg == static_cast<double>(tokens) / n_d, "l_avg mismatch");
    c.expect(s.acc_avg == static_cast<double>(correct) / n_d,
             "acc_avg mismatch");
    c.expect(s.n_records == static_cast<int>(n), "n_records mismatch");
  }
}

// ---------------------------------------------------------------------------
// 3. Grader golden suite and equivalence properties.

void criterion_grader(Criterion& c) {
  const struct {
    const char* response;
    const char* truth;
    bool correct;
  } golden[] = {
      // Plain extraction.
      {"so \\boxed{42}.", "42", true},
      {"\\boxed{72}", "72", true},
      {"\\boxed{41}", "42", false},
      // Nested braces.
      {"\\boxed{3^{2}}", "3^{2}", true},
      {"\\boxed{\\frac{1}{2}}", "0.5", true},
      {"\\boxed{\\frac{22}{7}}", "22/7", true},
      {"\\boxed{{a}{b}}", "{a}{b}", true},
      {"\\boxed{x^{2}+1}", "x^{2}+1", true},
      // Last-boxed selection.
      {"first \\boxed{1} then \\boxed{2}", "2", true},
      {"\\boxed{10} ... \\boxed{20} ... \\boxed{30}", "30", true},
      {"\\boxed{5} and later \\boxed{6}", "5", false},
      {"\\boxed{7} and \\boxed{oops", "7", true},
      // Fractions vs decimals, exact rational equality.
      {"\\boxed{1/2}", "0.5", true},
      {"\\boxed{0.25}", "\\frac{1}{4}", true},
      {"\\boxed{-\\frac{1}{2}}", "-0.5", true},
      {"\\boxed{3.14}", "\\frac{22}{7}", false},
      {"\\boxed{0.333}", "1/3", false},
      {"\\boxed{2.50}", "2.5", true},
      // Comma and currency stripping.
      {"\\boxed{1,234}", "1234", true},
      {"\\boxed{$1,000,000$}", "1000000", true},
      {"\\boxed{ $18$ }", "18", true},
      {"\\boxed{42.}", "42", true},
      {"\\boxed{50%}", "50", true},
      {"\\boxed{\\text{east}}", "east", true},
      // Missing or malformed boxed answers.
      {"no boxed answer here", "72", false},
      {"\\boxed{never closes", "3", false},
      {"", "0", false},
      {"The answer is 72.", "72", false},
  };
  int cases = 0;
  for (const auto& g : golden) {
    const GradeResult r = grade(g.response, g.truth);
    c.expect(r.correct == g.correct,
             std::string("grade(\"") + g.response + "\", \"" + g.truth +
                 "\")");
    ++cases;
  }
  c.expect(cases >= 25, "needs at least 25 golden cases");

  const GradeResult none = grade("no boxed answer here", "72");
  c.expect(none.failure_kind.has_value() &&
               *none.failure_kind == GradeFailure::kNoBoxed,
           "failure kind for missing boxed");

  std::mt19937_64 rng(424242);
  const std::string alphabet = "0123456789./\\frac{}-x+%$, ";
  for (int i = 0; i < 10000; ++i) {
    const std::string a = testutil::random_ascii(rng, 18, alphabet);
    const std::string b = testutil::random_ascii(rng, 18, alphabet);
    if (!answers_equivalent(a, a)) {
      c.expect(false, "reflexivity violated on \"" + a + "\"");
      break;
    }
    if (answers_equivalent(a, b) != answers_equivalent(b, a)) {
      c.expect(false, "symmetry violated on \"" + a + "\" / \"" + b + "\"");
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Filter monotonicity and ranking determinism.

void criterion_filter_rank(Criterion& c) {
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<CandidateScore> scores;
    const size_t n = 1 + rng() % 50;
    for (size_t i = 0; i < n; ++i) {
      CandidateScore s;
      s.candidate_id = "c" + std::to_string(i);
      s.l_avg = static_cast<double>(rng() % 16);
      s.acc_avg = (rng() % 11) / 10.0;
      s.n_records = 1;
      scores.push_back(std::move(s));
    }
    const double baseline = (rng() % 101) / 100.0;
    double t1 = (rng() % 400) / 100.0;
    double t2 = (rng() % 400) / 100.0;
    if (t1 > t2) std::swap(t1, t2);

    auto narrow = filter_by_tolerance(scores, baseline, t1).first;
    auto wide = filter_by_tolerance(scores, baseline, t2).first;
    std::set<std::string> wide_ids;
    for (const CandidateScore& s : wide) wide_ids.insert(s.candidate_id);
    for (const CandidateScore& s : narrow) {
      if (!wide_ids.count(s.candidate_id)) {
        c.expect(false, "survivors not monotone in tolerance");
        return;
      }
    }

    const auto ranked = rank_and_select(scores, 5);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (size_t i = scores.size(); i > 1; --i) {
        std::swap(scores[i - 1], scores[rng() % i]);
      }
      if (rank_and_select(scores, 5) != ranked) {
        c.expect(false, "ranking depends on input order");
        return;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 5. End-to-end mock campaign: elected prompt is the keyword argmax and the
//    best ratio never worsens across iterations.

void criterion_mock_campaign(Criterion& c) {
  testutil::TempDir tmp("accept-e2e");
  CampaignConfig config;  // 5 perspectives x 10 candidates x 3 iterations
  config.seed = 20240817;
  config.samples_per_question = 3;
  const EvalDataset pdset = testutil::arithmetic_dataset(20);

  CampaignOptions options;  // tokens = 1000 - 50 x count, always correct
  Campaign campaign(config, pdset, tmp.str(), options);
  const auto result = campaign.run();
  c.expect(result.has_value(), "campaign did not elect a final prompt");
  if (!result) return;

  const RunLedger ledger = load_ledger(tmp.str());
  c.expect(ledger.iterations.size() == 3, "expected 3 iterations");

  // Exhaustive ledger scan for the keyword-count argmax.
  int max_count = -1;
  for (const IterationState& it : ledger.iterations) {
    c.expect(it.candidates.size() == 50, "expected 50 candidates");
    for (const PromptCandidate& cand : it.candidates) {
      max_count = std::max(max_count, count_keyword(cand.text, "concise"));
    }
  }
  const int elected_count =
      count_keyword(result->final_candidate.text, "concise");
  c.expect(elected_count == max_count,
           "elected count " + std::to_string(elected_count) + " vs max " +
               std::to_string(max_count));
  c.expect(result->final_score.l_avg ==
               std::max(1000.0 - 50.0 * max_count, 25.0),
           "elected l_avg does not match the behavior formula");

  // Non-increasing per-iteration best compression ratio.
  double previous = std::numeric_limits<double>::infinity();
  for (const IterationState& it : ledger.iterations) {
    double best = std::numeric_limits<double>::infinity();
    for (const CandidateScore& s : it.scores) {
      if (s.passed_tolerance && s.compression_ratio) {
        best = std::min(best, *s.compression_ratio);
      }
    }
    c.expect(best <= previous, "best ratio increased between iterations");
    previous = best;
  }
  c.expect(campaign.ledger().baseline->acc_avg == 1.0,
           "always-correct behavior should give accuracy 1");
}

// ---------------------------------------------------------------------------
// 6. Resume determinism: interrupt after iteration 1, resume, compare bytes.

void criterion_resume(Criterion& c) {
  testutil::TempDir straight("accept-straight");
  testutil::TempDir interrupted("accept-interrupted");
  CampaignConfig config;
  config.seed = 31337;
  config.samples_per_question = 3;
  const EvalDataset pdset = testutil::arithmetic_dataset(20);

  Campaign full(config, pdset, straight.str(), {});
  c.expect(full.run().has_value(), "straight run failed");

  CampaignOptions halt;
  halt.halt_after_iteration = 1;
  Campaign first_leg(config, pdset, interrupted.str(), halt);
  c.expect(!first_leg.run().has_value(), "halted run should not finalize");

  Campaign second_leg(config, pdset, interrupted.str(), {});
  c.expect(second_leg.run().has_value(), "resumed run failed");
  c.expect(second_leg.baseline_calls() == 0,
           "resume re-requested baseline records");

  std::string why;
  c.expect(testutil::dirs_identical(straight.path(), interrupted.path(), &why),
           "ledgers differ after resume: " + why);
}

// ---------------------------------------------------------------------------
// 7. Correlation fit: exact collinear points and a hand-solved system.

void criterion_correlation(Criterion& c) {
  const CorrelationFit line =
      pdset_benchmark_correlation({{1, 2}, {2, 4}, {3, 6}});
  c.expect(line.r_squared == 1.0, "collinear R^2 must be exactly 1");
  c.expect(line.slope == 2.0 && line.intercept == 0.0, "collinear fit");

  // Solving the normal equations by hand for (0,0), (1,1), (2,0):
  // slope = 0, intercept = 1/3, SS_res = SS_tot = 2/3, so R^2 = 0.
  const CorrelationFit hand =
      pdset_benchmark_correlation({{0, 0}, {1, 1}, {2, 0}});
  c.expect(std::abs(hand.slope - 0.0) < 1e-12, "hand-solved slope");
  c.expect(std::abs(hand.intercept - 1.0 / 3.0) < 1e-12,
           "hand-solved intercept");
  c.expect(std::abs(hand.r_squared - 0.0) < 1e-12, "hand-solved R^2");
}

}  // namespace

int main() {
  run_criterion(1, "printed-ratio regression", 1.0,
                criterion_ratio_regression);
  run_criterion(2, "scoring oracle equivalence (1000 record sets)", 5.0,
                criterion_scoring_oracle);
  run_criterion(3, "grader golden suite + equivalence properties", 5.0,
                criterion_grader);
  run_criterion(4, "filter monotonicity + rank determinism", 5.0,
                criterion_filter_rank);
  run_criterion(5, "end-to-end mock campaign (5x10x3, 20 questions)", 60.0,
                criterion_mock_campaign);
  run_criterion(6, "resume determinism after interruption", 120.0,
                criterion_resume);
  run_criterion(7, "least-squares correlation fit", 1.0,
                criterion_correlation);
  if (g_total_failures == 0) {
    std::printf("acceptance: all 7 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", g_total_failures);
  }
  return g_total_failures;
}
