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

#ifndef CPO_ORCHESTRATOR_CAMPAIGN_HPP_
#define CPO_ORCHESTRATOR_CAMPAIGN_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "client/client.hpp"
#include "client/http_client.hpp"
#include "client/mock_client.hpp"
#include "orchestrator/ledger.hpp"

namespace cpo {

struct CampaignOptions {
  std::string backend = "mock";  // "mock" | "remote"
  MockBehavior mock_behavior;
  // Exemplars are pooled across perspectives. This switches each
  // perspective to condition only on its own surviving candidates
  // (its seeds when it has none).
  bool per_perspective_exemplars = false;
  // Stops after completing this iteration index, skipping the final
  // election; used to exercise resume paths. -1 runs to completion.
  int halt_after_iteration = -1;
  // Test hooks for the remote backend.
  Transport transport_override;
  SleepFn sleep_override;
};

struct CampaignResult {
  PromptCandidate final_candidate;
  CandidateScore final_score;
  CandidateScore baseline;
};

// Shared by the campaign and the one-shot eval command: evaluates one
// suffix (or preset) over every (question, sample) pair, concurrently up to
// max_in_flight, reusing `existing` records instead of re-requesting them.
// Records come back in canonical order: question (dataset order), then
// sample index.
struct EvalBatch {
  std::vector<EvalRecord> records;
  bool any_prefill_degraded = false;
  std::int64_t calls_made = 0;
};
EvalBatch evaluate_suffix(
    ModelClient& client, const CampaignConfig& config,
    const EvalDataset& items, const std::string& candidate_id,
    const std::optional<std::string>& suffix,
    const std::optional<std::string>& assistant_prefill,
    const std::map<std::pair<std::string, int>, EvalRecord>& existing);

// Drives one full campaign against a run directory: baseline measurement,
// iterated generate/evaluate/filter/rank/select, final election. Creating
// a Campaign over an existing directory resumes it; stored records are
// never re-requested and a finished run is a no-op.
class Campaign {
 public:
  Campaign(CampaignConfig config, EvalDataset pdset, std::string run_dir,
           CampaignOptions options);

  // Returns nullopt when halted early via halt_after_iteration.
  std::optional<CampaignResult> run();

  const RunLedger& ledger() const { return ledger_; }
  bool tolerance_vacuous() const { return tolerance_vacuous_; }
  std::int64_t baseline_calls() const { return baseline_calls_; }

 private:
  void prepare_directory();
  void make_clients();
  void ensure_baseline();
  void ensure_iteration(int index);
  std::vector<PromptCandidate> generate_candidates(int index,
                                                   IterationState& state);
  void evaluate_candidates(int index, IterationState& state);
  void score_iteration(int index, IterationState& state);
  CampaignResult finalize();

  std::vector<ExemplarRef> exemplar_pool_before(int index) const;
  std::vector<ExemplarRef> perspective_pool_before(int index,
                                                   Perspective p) const;
  std::unordered_set<std::string> known_texts() const;

  CampaignConfig config_;
  EvalDataset pdset_;
  RunDir dir_;
  CampaignOptions options_;
  RunLedger ledger_;
  std::shared_ptr<ModelClient> eval_client_;
  std::shared_ptr<ModelClient> generator_client_;
  bool tolerance_vacuous_ = false;
  std::int64_t baseline_calls_ = 0;
};

}  // namespace cpo

#endif  // CPO_ORCHESTRATOR_CAMPAIGN_HPP_
