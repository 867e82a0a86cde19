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

#include "orchestrator/ledger.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace fs = std::filesystem;

namespace cpo {

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorClass::kIo, "cannot open " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw Error(ErrorClass::kIo, "cannot write " + tmp.string());
    }
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace

Json to_json(const ExemplarRef& e) {
  return Json{{"id", e.id ? Json(*e.id) : Json(nullptr)}, {"text", e.text}};
}

ExemplarRef exemplar_from_json(const Json& j) {
  ExemplarRef e;
  if (!j.at("id").is_null()) e.id = j.at("id").get<std::string>();
  e.text = j.at("text").get<std::string>();
  return e;
}

RunDir::RunDir(std::string root) : root_(std::move(root)) {}

void RunDir::ensure_exists() const {
  fs::create_directories(fs::path(root_) / "iterations");
}

bool RunDir::exists(const std::string& rel) const {
  return fs::exists(fs::path(root_) / rel);
}

std::string RunDir::iteration_rel(int iteration, const char* file) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "iterations/%02d/%s", iteration, file);
  return buf;
}

void RunDir::write_snapshot(const std::string& backend,
                            const CampaignConfig& config,
                            const EvalDataset& pdset) const {
  Json items = Json::array();
  for (const QAItem& item : pdset.items) items.push_back(to_json(item));
  Json j{{"backend", backend},
         {"config", to_json(config)},
         {"pdset", Json{{"name", pdset.name}, {"items", items}}}};
  write_file_atomic(fs::path(root_) / "config.snapshot.json",
                    j.dump(2) + "\n");
}

bool RunDir::has_snapshot() const { return exists("config.snapshot.json"); }

void RunDir::read_snapshot(std::string& backend, CampaignConfig& config,
                           EvalDataset& pdset) const {
  Json j;
  try {
    j = Json::parse(read_file(fs::path(root_) / "config.snapshot.json"));
    backend = j.at("backend").get<std::string>();
    config = config_from_json(j.at("config"));
    pdset.name = j.at("pdset").at("name").get<std::string>();
    pdset.items.clear();
    for (const Json& item : j.at("pdset").at("items")) {
      pdset.items.push_back(qa_item_from_json(item));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorClass::kConfig,
                "corrupt config.snapshot.json in " + root_ + ": " + e.what());
  }
}

std::vector<EvalRecord> RunDir::read_records(const std::string& rel) const {
  const fs::path path = fs::path(root_) / rel;
  if (!fs::exists(path)) return {};
  std::ifstream in(path);
  std::vector<EvalRecord> records;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    try {
      records.push_back(record_from_json(Json::parse(lines[i])));
    } catch (const std::exception& e) {
      if (i + 1 == lines.size()) break;  // torn tail from an interrupted run
      throw Error(ErrorClass::kParse, rel + " line " + std::to_string(i + 1) +
                                          ": " + e.what());
    }
  }
  return records;
}

void RunDir::append_records(const std::string& rel,
                            const std::vector<EvalRecord>& batch) const {
  const fs::path path = fs::path(root_) / rel;
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw Error(ErrorClass::kIo, "cannot append to " + path.string());
  }
  for (const EvalRecord& r : batch) out << to_json(r).dump() << '\n';
  out.flush();
}

void RunDir::remove(const std::string& rel) const {
  fs::remove(fs::path(root_) / rel);
}

std::vector<PromptCandidate> RunDir::read_candidates(int iteration) const {
  const std::string rel = iteration_rel(iteration, "candidates.jsonl");
  const fs::path path = fs::path(root_) / rel;
  std::vector<PromptCandidate> out;
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorClass::kIo, "cannot open " + path.string());
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(candidate_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(ErrorClass::kParse, rel + " line " +
                                          std::to_string(line_no) + ": " +
                                          e.what());
    }
  }
  return out;
}

void RunDir::write_candidates(
    int iteration, const std::vector<PromptCandidate>& candidates) const {
  std::string content;
  for (const PromptCandidate& c : candidates) {
    content += to_json(c).dump() + "\n";
  }
  const fs::path path =
      fs::path(root_) / iteration_rel(iteration, "candidates.jsonl");
  fs::create_directories(path.parent_path());
  write_file_atomic(path, content);
}

Json RunDir::read_json(const std::string& rel) const {
  try {
    return Json::parse(read_file(fs::path(root_) / rel));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorClass::kParse, rel + ": " + e.what());
  }
}

void RunDir::write_json(const std::string& rel, const Json& j) const {
  const fs::path path = fs::path(root_) / rel;
  fs::create_directories(path.parent_path());
  write_file_atomic(path, j.dump(2) + "\n");
}

Json iteration_scores_to_json(const IterationState& it) {
  Json scores = Json::array();
  for (const CandidateScore& s : it.scores) scores.push_back(to_json(s));
  Json exemplars = Json::array();
  for (const ExemplarRef& e : it.next_exemplars) {
    exemplars.push_back(to_json(e));
  }
  return Json{{"iteration", it.index},
              {"scores", scores},
              {"selected", it.selected},
              {"next_exemplars", exemplars},
              {"degenerate", it.degenerate},
              {"notes", it.notes}};
}

void iteration_scores_from_json(const Json& j, IterationState& it) {
  it.index = j.at("iteration").get<int>();
  it.scores.clear();
  for (const Json& s : j.at("scores")) it.scores.push_back(score_from_json(s));
  it.selected = j.at("selected").get<std::vector<std::string>>();
  it.next_exemplars.clear();
  for (const Json& e : j.at("next_exemplars")) {
    it.next_exemplars.push_back(exemplar_from_json(e));
  }
  it.degenerate = j.at("degenerate").get<bool>();
  it.notes = j.at("notes").get<std::vector<std::string>>();
  it.scored = true;
}

RunLedger load_ledger(const std::string& run_dir) {
  RunDir dir(run_dir);
  if (!dir.has_snapshot()) {
    throw Error(ErrorClass::kConfig,
                "no config.snapshot.json under " + run_dir);
  }
  RunLedger ledger;
  dir.read_snapshot(ledger.backend, ledger.config, ledger.pdset);
  ledger.baseline_records = dir.read_records("baseline.records.jsonl");
  if (!ledger.baseline_records.empty()) {
    ledger.baseline = score_candidate(ledger.baseline_records);
  }
  for (int i = 0; i < ledger.config.iterations; ++i) {
    if (!dir.exists(RunDir::iteration_rel(i, "candidates.jsonl"))) break;
    IterationState it;
    it.index = i;
    it.candidates = dir.read_candidates(i);
    it.records = dir.read_records(RunDir::iteration_rel(i, "records.jsonl"));
    if (dir.exists(RunDir::iteration_rel(i, "scores.json"))) {
      iteration_scores_from_json(
          dir.read_json(RunDir::iteration_rel(i, "scores.json")), it);
    }
    ledger.iterations.push_back(std::move(it));
  }
  if (dir.exists("final.json")) {
    ledger.final_result = dir.read_json("final.json");
  }
  return ledger;
}

}  // namespace cpo
