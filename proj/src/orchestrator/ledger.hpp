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

#ifndef CPO_ORCHESTRATOR_LEDGER_HPP_
#define CPO_ORCHESTRATOR_LEDGER_HPP_

#include <optional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"
#include "dataset/dataset.hpp"
#include "scoring/scoring.hpp"

namespace cpo {

// Exemplar pool entry; seeds carry no candidate id.
struct ExemplarRef {
  std::optional<std::string> id;
  std::string text;
};

Json to_json(const ExemplarRef& e);
ExemplarRef exemplar_from_json(const Json& j);

struct IterationState {
  int index = 0;
  std::vector<PromptCandidate> candidates;
  std::vector<EvalRecord> records;
  std::vector<CandidateScore> scores;      // filled once the iteration scored
  std::vector<std::string> selected;       // ranked pooled top-k ids
  std::vector<ExemplarRef> next_exemplars; // pool handed to the next round
  bool degenerate = false;                 // no survivor; pool carried over
  std::vector<std::string> notes;
  bool scored = false;
  // In-process call accounting; not persisted.
  std::int64_t generator_calls = 0;
  std::int64_t evaluation_calls = 0;
};

struct RunLedger {
  std::string backend;
  CampaignConfig config;
  EvalDataset pdset;
  std::vector<EvalRecord> baseline_records;
  std::optional<CandidateScore> baseline;
  std::vector<IterationState> iterations;
  std::optional<Json> final_result;
};

inline constexpr const char kBaselineCandidateId[] = "baseline-original";

// Filesystem layout under one run directory:
//   config.snapshot.json
//   baseline.records.jsonl
//   iterations/<NN>/candidates.jsonl
//   iterations/<NN>/records.jsonl
//   iterations/<NN>/scores.json
//   final.json
class RunDir {
 public:
  explicit RunDir(std::string root);

  const std::string& root() const { return root_; }
  void ensure_exists() const;
  bool exists(const std::string& rel) const;

  void write_snapshot(const std::string& backend, const CampaignConfig& config,
                      const EvalDataset& pdset) const;
  bool has_snapshot() const;
  void read_snapshot(std::string& backend, CampaignConfig& config,
                     EvalDataset& pdset) const;

  // Tolerates a torn final line (interrupted append); missing file -> empty.
  std::vector<EvalRecord> read_records(const std::string& rel) const;
  void append_records(const std::string& rel,
                      const std::vector<EvalRecord>& batch) const;
  void remove(const std::string& rel) const;

  std::vector<PromptCandidate> read_candidates(int iteration) const;
  void write_candidates(int iteration,
                        const std::vector<PromptCandidate>& candidates) const;

  Json read_json(const std::string& rel) const;
  void write_json(const std::string& rel, const Json& j) const;

  static std::string iteration_rel(int iteration, const char* file);

 private:
  std::string root_;
};

// Reads whatever is present; partial runs yield partial ledgers. Reports
// run entirely from this (no model calls).
RunLedger load_ledger(const std::string& run_dir);

Json iteration_scores_to_json(const IterationState& it);
void iteration_scores_from_json(const Json& j, IterationState& it);

}  // namespace cpo

#endif  // CPO_ORCHESTRATOR_LEDGER_HPP_
