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

#ifndef CPO_SCORING_SCORING_HPP_
#define CPO_SCORING_SCORING_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace cpo {

enum class TokenSource {
  kReported,      // endpoint usage metadata
  kApproximated,  // ceil(characters / 4)
};

const char* token_source_name(TokenSource s);
TokenSource token_source_from_name(const std::string& name);

// One (candidate, question, sample) outcome.
struct EvalRecord {
  std::string candidate_id;
  std::string question_id;
  int sample_index = 0;
  std::int64_t completion_tokens = 0;
  bool correct = false;
  bool truncated = false;
  TokenSource token_source = TokenSource::kReported;
};

Json to_json(const EvalRecord& r);
EvalRecord record_from_json(const Json& j);

// Aggregates over all (question, sample) pairs of one candidate.
struct CandidateScore {
  std::string candidate_id;
  double l_avg = 0.0;
  double acc_avg = 0.0;
  int n_records = 0;
  std::optional<double> compression_ratio;  // vs baseline l_avg
  bool passed_tolerance = false;
};

Json to_json(const CandidateScore& s);
CandidateScore score_from_json(const Json& j);

// Mean token count and mean correctness over the records. Token sums
// accumulate in integers; the division happens once. Records must be
// non-empty and share one candidate_id.
CandidateScore score_candidate(const std::vector<EvalRecord>& records);

// candidate_l_avg / baseline_l_avg. baseline_l_avg must be > 0.
double compression_ratio(double candidate_l_avg, double baseline_l_avg);

// A candidate survives iff acc_avg >= baseline_acc - tolerance_points/100.
// Marks passed_tolerance on every score. Returns (survivors, discarded).
std::pair<std::vector<CandidateScore>, std::vector<CandidateScore>>
filter_by_tolerance(std::vector<CandidateScore> scores, double baseline_acc,
                    double tolerance_points);

// Sorts survivors by l_avg ascending, ties by acc_avg descending then
// candidate_id ascending; returns the first min(k, |survivors|) ids.
std::vector<std::string> rank_and_select(std::vector<CandidateScore> survivors,
                                         int k);

// Strict-weak-order used by rank_and_select and the final election.
bool score_ranks_before(const CandidateScore& a, const CandidateScore& b);

struct CorrelationFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  size_t n_pairs = 0;
};

// Ordinary least squares of y on x over (x, y) pairs. Needs >= 3 pairs and
// non-degenerate x variance.
CorrelationFit pdset_benchmark_correlation(
    const std::vector<std::pair<double, double>>& pairs);

}  // namespace cpo

#endif  // CPO_SCORING_SCORING_HPP_
