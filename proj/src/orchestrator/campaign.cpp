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

#include "orchestrator/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "core/compose.hpp"
#include "core/error.hpp"
#include "genprompt/genprompt.hpp"
#include "grader/grader.hpp"

namespace cpo {

namespace {

constexpr int kGeneratorMaxTokens = 2048;
constexpr int kGeneratorExtraAttempts = 2;  // re-requests after the first

void parallel_for(size_t count, int max_threads,
                  const std::function<void(size_t)>& fn) {
  const size_t workers =
      std::min<size_t>(std::max(max_threads, 1), std::max<size_t>(count, 1));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

EvalBatch evaluate_suffix(
    ModelClient& client, const CampaignConfig& config,
    const EvalDataset& items, const std::string& candidate_id,
    const std::optional<std::string>& suffix,
    const std::optional<std::string>& assistant_prefill,
    const std::map<std::pair<std::string, int>, EvalRecord>& existing) {
  struct Task {
    size_t item_index;
    int sample;
  };
  std::vector<Task> todo;
  EvalBatch batch;
  batch.records.resize(items.items.size() *
                       static_cast<size_t>(config.samples_per_question));

  size_t slot = 0;
  std::vector<size_t> todo_slots;
  for (size_t qi = 0; qi < items.items.size(); ++qi) {
    for (int s = 0; s < config.samples_per_question; ++s, ++slot) {
      auto found = existing.find({items.items[qi].id, s});
      if (found != existing.end()) {
        batch.records[slot] = found->second;
      } else {
        todo.push_back({qi, s});
        todo_slots.push_back(slot);
      }
    }
  }

  std::atomic<bool> degraded{false};
  parallel_for(todo.size(), config.max_in_flight, [&](size_t t) {
    const Task& task = todo[t];
    const QAItem& item = items.items[task.item_index];
    ModelRequest request;
    request.user_message =
        compose_user_message(item.question, config.base_instruction, suffix);
    request.temperature = config.temperature;
    request.top_p = config.top_p;
    request.max_tokens = config.max_tokens;
    request.sample_index = task.sample;
    request.assistant_prefill = assistant_prefill;

    const ModelResponse response = client.complete(request);
    if (response.prefill_degraded) degraded.store(true);

    EvalRecord record;
    record.candidate_id = candidate_id;
    record.question_id = item.id;
    record.sample_index = task.sample;
    record.completion_tokens = response.completion_tokens;
    record.correct = grade(response.text, item.answer).correct;
    record.truncated = response.truncated;
    record.token_source = response.token_source;
    batch.records[todo_slots[t]] = std::move(record);
  });

  batch.any_prefill_degraded = degraded.load();
  batch.calls_made = static_cast<std::int64_t>(todo.size());
  return batch;
}

Campaign::Campaign(CampaignConfig config, EvalDataset pdset,
                   std::string run_dir, CampaignOptions options)
    : config_(std::move(config)),
      pdset_(std::move(pdset)),
      dir_(std::move(run_dir)),
      options_(std::move(options)) {
  validate_config(config_);
  if (options_.backend != "mock" && options_.backend != "remote") {
    throw Error(ErrorClass::kConfig,
                "backend must be \"mock\" or \"remote\", got \"" +
                    options_.backend + "\"");
  }
  if (pdset_.items.empty()) {
    throw Error(ErrorClass::kInvalidArgument, "development set is empty");
  }
}

void Campaign::prepare_directory() {
  dir_.ensure_exists();
  if (dir_.has_snapshot()) {
    std::string stored_backend;
    CampaignConfig stored_config;
    EvalDataset stored_pdset;
    dir_.read_snapshot(stored_backend, stored_config, stored_pdset);
    Json stored_items = Json::array();
    for (const QAItem& i : stored_pdset.items) stored_items.push_back(to_json(i));
    Json these_items = Json::array();
    for (const QAItem& i : pdset_.items) these_items.push_back(to_json(i));
    if (stored_backend != options_.backend ||
        to_json(stored_config).dump() != to_json(config_).dump() ||
        stored_items.dump() != these_items.dump() ||
        stored_pdset.name != pdset_.name) {
      throw Error(ErrorClass::kConfig,
                  "refusing to resume " + dir_.root() +
                      ": config snapshot differs from the supplied "
                      "configuration");
    }
  } else {
    dir_.write_snapshot(options_.backend, config_, pdset_);
  }
  ledger_.backend = options_.backend;
  ledger_.config = config_;
  ledger_.pdset = pdset_;
}

void Campaign::make_clients() {
  if (options_.backend == "mock") {
    auto mock = std::make_shared<MockModelClient>(
        options_.mock_behavior, config_.seed, config_.base_instruction,
        pdset_.items);
    eval_client_ = mock;
    generator_client_ = mock;
    return;
  }
  HttpModelClient::Options eval_options;
  eval_options.endpoint = config_.endpoint;
  eval_options.max_in_flight = config_.max_in_flight;
  eval_options.jitter_seed = static_cast<std::uint64_t>(config_.seed);
  eval_options.transport = options_.transport_override;
  eval_options.sleep = options_.sleep_override;
  eval_client_ = std::make_shared<HttpModelClient>(eval_options);

  HttpModelClient::Options gen_options = eval_options;
  gen_options.endpoint = config_.generator_endpoint;
  generator_client_ = std::make_shared<HttpModelClient>(gen_options);
}

void Campaign::ensure_baseline() {
  const std::string rel = "baseline.records.jsonl";
  std::vector<EvalRecord> stored = dir_.read_records(rel);
  const size_t expected =
      pdset_.items.size() * static_cast<size_t>(config_.samples_per_question);

  if (stored.size() != expected) {
    std::map<std::pair<std::string, int>, EvalRecord> existing;
    for (EvalRecord& r : stored) {
      existing.emplace(std::make_pair(r.question_id, r.sample_index), r);
    }
    EvalBatch batch =
        evaluate_suffix(*eval_client_, config_, pdset_, kBaselineCandidateId,
                        std::nullopt, std::nullopt, existing);
    baseline_calls_ = batch.calls_made;
    dir_.remove(rel);
    dir_.append_records(rel, batch.records);
    stored = std::move(batch.records);
  }

  ledger_.baseline_records = std::move(stored);
  ledger_.baseline = score_candidate(ledger_.baseline_records);
  if (ledger_.baseline->acc_avg == 0.0) {
    tolerance_vacuous_ = true;
    std::fprintf(stderr,
                 "warning: baseline accuracy is 0; the tolerance filter "
                 "cannot discard any candidate\n");
  }
}

std::vector<ExemplarRef> Campaign::exemplar_pool_before(int index) const {
  if (index == 0) return {};
  return ledger_.iterations[index - 1].next_exemplars;
}

std::unordered_set<std::string> Campaign::known_texts() const {
  std::unordered_set<std::string> texts;
  for (const IterationState& it : ledger_.iterations) {
    for (const PromptCandidate& c : it.candidates) texts.insert(c.text);
  }
  return texts;
}

// Per-technique routing: the most recent round where this perspective has
// tolerance-passing candidates supplies its own ranked top-k.
std::vector<ExemplarRef> Campaign::perspective_pool_before(
    int index, Perspective perspective) const {
  for (int t = index - 1; t >= 0; --t) {
    const IterationState& it = ledger_.iterations[t];
    std::map<std::string, const PromptCandidate*> by_id;
    for (const PromptCandidate& c : it.candidates) by_id[c.id] = &c;
    std::vector<CandidateScore> own;
    for (const CandidateScore& s : it.scores) {
      auto found = by_id.find(s.candidate_id);
      if (found != by_id.end() && found->second->perspective == perspective &&
          s.passed_tolerance) {
        own.push_back(s);
      }
    }
    if (own.empty()) continue;
    std::vector<ExemplarRef> pool;
    for (const std::string& id : rank_and_select(own, config_.top_k)) {
      pool.push_back(ExemplarRef{id, by_id.at(id)->text});
    }
    return pool;
  }
  return {};
}

std::vector<PromptCandidate> Campaign::generate_candidates(
    int index, IterationState& state) {
  const std::vector<ExemplarRef> shared_pool = exemplar_pool_before(index);

  std::unordered_set<std::string> texts = known_texts();
  std::vector<PromptCandidate> all;
  for (Perspective p : config_.perspectives) {
    const PerspectiveSpec& spec = perspective_spec(p);
    const std::vector<ExemplarRef> pool =
        options_.per_perspective_exemplars
            ? perspective_pool_before(index, p)
            : shared_pool;
    std::vector<std::string> exemplars;
    std::vector<std::string> parent_ids;
    for (const ExemplarRef& e : pool) {
      exemplars.push_back(e.text);
      if (e.id) parent_ids.push_back(*e.id);
    }
    if (exemplars.empty()) exemplars = spec.seed_examples;
    const std::string instruction = render_generator_instruction(
        spec, exemplars, config_.candidates_per_perspective);

    std::vector<PromptCandidate> accepted;
    for (int attempt = 0; attempt <= kGeneratorExtraAttempts; ++attempt) {
      if (static_cast<int>(accepted.size()) >=
          config_.candidates_per_perspective) {
        break;
      }
      ModelRequest request;
      request.user_message = instruction;
      request.temperature = config_.temperature;
      request.top_p = config_.top_p;
      request.max_tokens = kGeneratorMaxTokens;
      request.sample_index = attempt;
      const ModelResponse response = generator_client_->complete(request);
      ++state.generator_calls;
      std::vector<PromptCandidate> parsed = parse_generated_candidates(
          response.text, p, index,
          config_.candidates_per_perspective -
              static_cast<int>(accepted.size()),
          texts, static_cast<int>(accepted.size()), parent_ids);
      for (PromptCandidate& c : parsed) {
        texts.insert(c.text);
        accepted.push_back(std::move(c));
      }
    }
    all.insert(all.end(), std::make_move_iterator(accepted.begin()),
               std::make_move_iterator(accepted.end()));
  }
  if (all.empty()) {
    throw Error(ErrorClass::kGeneration,
                "iteration " + std::to_string(index) +
                    ": no perspective produced any candidate");
  }
  return all;
}

void Campaign::evaluate_candidates(int index, IterationState& state) {
  const std::string rel = RunDir::iteration_rel(index, "records.jsonl");
  std::vector<EvalRecord> stored = dir_.read_records(rel);

  std::map<std::string,
           std::map<std::pair<std::string, int>, EvalRecord>>
      existing_by_candidate;
  for (EvalRecord& r : stored) {
    existing_by_candidate[r.candidate_id].emplace(
        std::make_pair(r.question_id, r.sample_index), r);
  }

  // Rebuild the file in canonical candidate-major order, reusing every
  // stored record; only missing (question, sample) pairs hit the model.
  if (!stored.empty()) dir_.remove(rel);
  state.records.clear();
  static const std::map<std::pair<std::string, int>, EvalRecord> kNoRecords;
  for (const PromptCandidate& c : state.candidates) {
    auto found = existing_by_candidate.find(c.id);
    const auto& existing =
        found == existing_by_candidate.end() ? kNoRecords : found->second;
    EvalBatch batch = evaluate_suffix(*eval_client_, config_, pdset_, c.id,
                                      c.text, std::nullopt, existing);
    state.evaluation_calls += batch.calls_made;
    dir_.append_records(rel, batch.records);
    state.records.insert(state.records.end(),
                         std::make_move_iterator(batch.records.begin()),
                         std::make_move_iterator(batch.records.end()));
  }
}

void Campaign::score_iteration(int index, IterationState& state) {
  std::map<std::string, std::vector<EvalRecord>> by_candidate;
  for (const EvalRecord& r : state.records) {
    by_candidate[r.candidate_id].push_back(r);
  }

  std::vector<CandidateScore> scores;
  scores.reserve(state.candidates.size());
  for (const PromptCandidate& c : state.candidates) {
    CandidateScore s = score_candidate(by_candidate.at(c.id));
    s.compression_ratio =
        compression_ratio(s.l_avg, ledger_.baseline->l_avg);
    scores.push_back(std::move(s));
  }

  auto [survivors, discarded] = filter_by_tolerance(
      std::move(scores), ledger_.baseline->acc_avg, config_.tolerance);
  state.selected = rank_and_select(survivors, config_.top_k);

  // Persist scores in candidate order with pass/fail marks applied.
  std::map<std::string, CandidateScore> marked;
  for (CandidateScore& s : survivors) marked.emplace(s.candidate_id, std::move(s));
  for (CandidateScore& s : discarded) marked.emplace(s.candidate_id, std::move(s));
  state.scores.clear();
  for (const PromptCandidate& c : state.candidates) {
    state.scores.push_back(marked.at(c.id));
  }

  if (state.selected.empty()) {
    state.degenerate = true;
    state.next_exemplars = exemplar_pool_before(index);
  } else {
    state.degenerate = false;
    std::map<std::string, const PromptCandidate*> by_id;
    for (const PromptCandidate& c : state.candidates) by_id[c.id] = &c;
    state.next_exemplars.clear();
    for (const std::string& id : state.selected) {
      state.next_exemplars.push_back(ExemplarRef{id, by_id.at(id)->text});
    }
  }

  // A perspective absent from the candidate file failed generation.
  state.notes.clear();
  std::unordered_set<std::string> present;
  for (const PromptCandidate& c : state.candidates) {
    present.insert(perspective_name(c.perspective));
  }
  for (Perspective p : config_.perspectives) {
    if (!present.count(perspective_name(p))) {
      state.notes.push_back(std::string("perspective ") +
                            perspective_name(p) +
                            " produced no candidates this iteration");
    }
  }

  dir_.write_json(RunDir::iteration_rel(index, "scores.json"),
                  iteration_scores_to_json(state));
  state.scored = true;
}

void Campaign::ensure_iteration(int index) {
  IterationState state;
  state.index = index;

  if (dir_.exists(RunDir::iteration_rel(index, "candidates.jsonl"))) {
    state.candidates = dir_.read_candidates(index);
    ledger_.iterations.push_back(std::move(state));
  } else {
    IterationState fresh;
    fresh.index = index;
    // Generation consults prior iterations only, so push after building.
    fresh.candidates = generate_candidates(index, fresh);
    dir_.write_candidates(index, fresh.candidates);
    ledger_.iterations.push_back(std::move(fresh));
  }
  IterationState& current = ledger_.iterations.back();

  if (dir_.exists(RunDir::iteration_rel(index, "scores.json"))) {
    current.records =
        dir_.read_records(RunDir::iteration_rel(index, "records.jsonl"));
    iteration_scores_from_json(
        dir_.read_json(RunDir::iteration_rel(index, "scores.json")), current);
    return;
  }

  evaluate_candidates(index, current);
  score_iteration(index, current);
}

CampaignResult Campaign::finalize() {
  if (dir_.exists("final.json")) {
    ledger_.final_result = dir_.read_json("final.json");
  } else {
    const CandidateScore* best = nullptr;
    for (const IterationState& it : ledger_.iterations) {
      for (const CandidateScore& s : it.scores) {
        if (!s.passed_tolerance) continue;
        if (best == nullptr || score_ranks_before(s, *best)) best = &s;
      }
    }
    if (best == nullptr) {
      throw Error(ErrorClass::kFinalize,
                  "no candidate passed the accuracy tolerance; consider "
                  "relaxing it");
    }
    const PromptCandidate* winner = nullptr;
    for (const IterationState& it : ledger_.iterations) {
      for (const PromptCandidate& c : it.candidates) {
        if (c.id == best->candidate_id) winner = &c;
      }
    }
    if (winner == nullptr) {
      throw Error(ErrorClass::kInternal,
                  "score " + best->candidate_id + " has no stored candidate");
    }
    Json final_json{
        {"final_candidate_id", best->candidate_id},
        {"text", winner->text},
        {"perspective", perspective_name(winner->perspective)},
        {"iteration", winner->iteration},
        {"score", to_json(*best)},
        {"baseline", to_json(*ledger_.baseline)},
    };
    dir_.write_json("final.json", final_json);
    ledger_.final_result = std::move(final_json);
  }

  const Json& f = *ledger_.final_result;
  CampaignResult result;
  result.final_candidate.id = f.at("final_candidate_id").get<std::string>();
  result.final_candidate.text = f.at("text").get<std::string>();
  result.final_candidate.perspective =
      perspective_from_name(f.at("perspective").get<std::string>());
  result.final_candidate.iteration = f.at("iteration").get<int>();
  result.final_score = score_from_json(f.at("score"));
  result.baseline = score_from_json(f.at("baseline"));
  return result;
}

std::optional<CampaignResult> Campaign::run() {
  prepare_directory();
  make_clients();
  ensure_baseline();
  for (int i = 0; i < config_.iterations; ++i) {
    ensure_iteration(i);
    if (options_.halt_after_iteration == i) return std::nullopt;
  }
  return finalize();
}

}  // namespace cpo
