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

#include "scoring/scoring.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace cpo {

const char* token_source_name(TokenSource s) {
  return s == TokenSource::kReported ? "reported" : "approximated";
}

TokenSource token_source_from_name(const std::string& name) {
  if (name == "reported") return TokenSource::kReported;
  if (name == "approximated") return TokenSource::kApproximated;
  throw Error(ErrorClass::kParse, "unknown token_source: \"" + name + "\"");
}

Json to_json(const EvalRecord& r) {
  return Json{{"candidate_id", r.candidate_id},
              {"question_id", r.question_id},
              {"sample_index", r.sample_index},
              {"completion_tokens", r.completion_tokens},
              {"correct", r.correct},
              {"truncated", r.truncated},
              {"token_source", token_source_name(r.token_source)}};
}

EvalRecord record_from_json(const Json& j) {
  EvalRecord r;
  r.candidate_id = j.at("candidate_id").get<std::string>();
  r.question_id = j.at("question_id").get<std::string>();
  r.sample_index = j.at("sample_index").get<int>();
  r.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
  r.correct = j.at("correct").get<bool>();
  r.truncated = j.at("truncated").get<bool>();
  r.token_source =
      token_source_from_name(j.at("token_source").get<std::string>());
  return r;
}

Json to_json(const CandidateScore& s) {
  Json j{{"candidate_id", s.candidate_id},
         {"l_avg", s.l_avg},
         {"acc_avg", s.acc_avg},
         {"n_records", s.n_records},
         {"passed_tolerance", s.passed_tolerance}};
  if (s.compression_ratio.has_value()) {
    j["compression_ratio"] = *s.compression_ratio;
  } else {
    j["compression_ratio"] = nullptr;
  }
  return j;
}

CandidateScore score_from_json(const Json& j) {
  CandidateScore s;
  s.candidate_id = j.at("candidate_id").get<std::string>();
  s.l_avg = j.at("l_avg").get<double>();
  s.acc_avg = j.at("acc_avg").get<double>();
  s.n_records = j.at("n_records").get<int>();
  s.passed_tolerance = j.at("passed_tolerance").get<bool>();
  if (!j.at("compression_ratio").is_null()) {
    s.compression_ratio = j.at("compression_ratio").get<double>();
  }
  return s;
}

CandidateScore score_candidate(const std::vector<EvalRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorClass::kInvalidArgument,
                "score_candidate needs at least one record");
  }
  const std::string& id = records.front().candidate_id;
  std::int64_t token_sum = 0;
  std::int64_t correct_count = 0;
  for (const EvalRecord& r : records) {
    if (r.candidate_id != id) {
      throw Error(ErrorClass::kInvalidArgument,
                  "mixed candidate ids in score_candidate: \"" + id +
                      "\" vs \"" + r.candidate_id + "\"");
    }
    token_sum += r.completion_tokens;
    if (r.correct) ++correct_count;
  }
  CandidateScore score;
  score.candidate_id = id;
  score.n_records = static_cast<int>(records.size());
  score.l_avg = static_cast<double>(token_sum) / score.n_records;
  score.acc_avg = static_cast<double>(correct_count) / score.n_records;
  return score;
}

double compression_ratio(double candidate_l_avg, double baseline_l_avg) {
  if (!(baseline_l_avg > 0)) {
    throw Error(ErrorClass::kInvalidArgument,
                "baseline l_avg must be > 0 for a compression ratio");
  }
  return candidate_l_avg / baseline_l_avg;
}

std::pair<std::vector<CandidateScore>, std::vector<CandidateScore>>
filter_by_tolerance(std::vector<CandidateScore> scores, double baseline_acc,
                    double tolerance_points) {
  if (baseline_acc < 0 || baseline_acc > 1) {
    throw Error(ErrorClass::kInvalidArgument,
                "baseline accuracy must be in [0, 1]");
  }
  if (tolerance_points < 0) {
    throw Error(ErrorClass::kInvalidArgument, "tolerance must be >= 0");
  }
  const double cutoff = baseline_acc - tolerance_points / 100.0;
  std::vector<CandidateScore> survivors, discarded;
  for (CandidateScore& s : scores) {
    s.passed_tolerance = s.acc_avg >= cutoff;
    (s.passed_tolerance ? survivors : discarded).push_back(std::move(s));
  }
  return {std::move(survivors), std::move(discarded)};
}

bool score_ranks_before(const CandidateScore& a, const CandidateScore& b) {
  if (a.l_avg != b.l_avg) return a.l_avg < b.l_avg;
  if (a.acc_avg != b.acc_avg) return a.acc_avg > b.acc_avg;
  return a.candidate_id < b.candidate_id;
}

std::vector<std::string> rank_and_select(std::vector<CandidateScore> survivors,
                                         int k) {
  if (k < 1) {
    throw Error(ErrorClass::kInvalidArgument, "k must be >= 1");
  }
  std::sort(survivors.begin(), survivors.end(), score_ranks_before);
  std::vector<std::string> ids;
  const size_t take = std::min(static_cast<size_t>(k), survivors.size());
  ids.reserve(take);
  for (size_t i = 0; i < take; ++i) ids.push_back(survivors[i].candidate_id);
  return ids;
}

CorrelationFit pdset_benchmark_correlation(
    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3) {
    throw Error(ErrorClass::kInvalidArgument,
                "correlation fit needs at least 3 pairs, got " +
                    std::to_string(pairs.size()));
  }
  const double n = static_cast<double>(pairs.size());
  double x_mean = 0.0, y_mean = 0.0;
  for (const auto& [x, y] : pairs) {
    x_mean += x;
    y_mean += y;
  }
  x_mean /= n;
  y_mean /= n;

  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - x_mean) * (x - x_mean);
    sxy += (x - x_mean) * (y - y_mean);
  }
  if (sxx == 0.0) {
    throw Error(ErrorClass::kInvalidArgument,
                "correlation fit needs non-degenerate x variance");
  }

  CorrelationFit fit;
  fit.n_pairs = pairs.size();
  fit.slope = sxy / sxx;
  fit.intercept = y_mean - fit.slope * x_mean;

  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [x, y] : pairs) {
    const double predicted = fit.intercept + fit.slope * x;
    ss_res += (y - predicted) * (y - predicted);
    ss_tot += (y - y_mean) * (y - y_mean);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace cpo
