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

#include "cpo/cpo.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "client/http_client.hpp"
#include "client/mock_client.hpp"
#include "core/config.hpp"
#include "core/error.hpp"
#include "dataset/dataset.hpp"
#include "genprompt/genprompt.hpp"
#include "grader/grader.hpp"
#include "orchestrator/campaign.hpp"
#include "orchestrator/ledger.hpp"
#include "report/report.hpp"

struct cpo_config {
  cpo::CampaignConfig value;
};

struct cpo_dataset {
  cpo::EvalDataset value;
};

struct cpo_campaign {
  cpo::CampaignConfig config;
  cpo::EvalDataset pdset;
  std::string backend;
  std::string run_dir;
  std::optional<cpo::CampaignResult> result;
};

namespace {

thread_local std::string g_last_error;

cpo_status status_for(cpo::ErrorClass cls) {
  using cpo::ErrorClass;
  switch (cls) {
    case ErrorClass::kInvalidArgument:
      return CPO_ERR_INVALID_ARGUMENT;
    case ErrorClass::kConfig:
    case ErrorClass::kParse:
    case ErrorClass::kIo:
      return CPO_ERR_CONFIG;
    case ErrorClass::kTransport:
    case ErrorClass::kRequest:
      return CPO_ERR_TRANSPORT;
    case ErrorClass::kGeneration:
      return CPO_ERR_GENERATION;
    case ErrorClass::kFinalize:
      return CPO_ERR_FINALIZE;
    case ErrorClass::kInternal:
      return CPO_ERR_INTERNAL;
  }
  return CPO_ERR_INTERNAL;
}

template <typename Fn>
cpo_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return CPO_OK;
  } catch (const cpo::Error& e) {
    g_last_error = e.what();
    return status_for(e.cls());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CPO_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CPO_ERR_INTERNAL;
  }
}

cpo_status invalid(const char* message) {
  g_last_error = message;
  return CPO_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::shared_ptr<cpo::ModelClient> make_client(
    const cpo::CampaignConfig& config, const std::string& backend,
    const cpo::EvalDataset& dataset) {
  if (backend == "mock") {
    return std::make_shared<cpo::MockModelClient>(cpo::MockBehavior{},
                                                  config.seed,
                                                  config.base_instruction,
                                                  dataset.items);
  }
  if (backend == "remote") {
    cpo::HttpModelClient::Options options;
    options.endpoint = config.endpoint;
    options.max_in_flight = config.max_in_flight;
    options.jitter_seed = static_cast<std::uint64_t>(config.seed);
    return std::make_shared<cpo::HttpModelClient>(std::move(options));
  }
  throw cpo::Error(cpo::ErrorClass::kConfig,
                   "backend must be \"mock\" or \"remote\", got \"" + backend +
                       "\"");
}

std::string campaign_summary(const cpo_campaign& campaign) {
  const cpo::CampaignResult& r = *campaign.result;
  std::string text;
  text += "final prompt (id " + r.final_candidate.id + ", perspective " +
          cpo::perspective_name(r.final_candidate.perspective) +
          ", iteration " + std::to_string(r.final_candidate.iteration) +
          "):\n";
  text += "  " + r.final_candidate.text + "\n";
  text += "acc " + cpo::format_pct(r.final_score.acc_avg) + "  tok " +
          cpo::format_tok(r.final_score.l_avg);
  if (r.final_score.compression_ratio) {
    text += "  ratio " + cpo::format_pct(*r.final_score.compression_ratio);
  }
  text += "\nbaseline acc " + cpo::format_pct(r.baseline.acc_avg) + "  tok " +
          cpo::format_tok(r.baseline.l_avg) + "\n";
  text += "run directory: " + campaign.run_dir + "\n";
  return text;
}

}  // namespace

extern "C" {

const char* cpo_version(void) { return "0.1.0"; }

const char* cpo_last_error(void) { return g_last_error.c_str(); }

void cpo_string_free(char* s) { std::free(s); }

int cpo_exit_code(cpo_status status) {
  switch (status) {
    case CPO_OK:
      return 0;
    case CPO_ERR_CONFIG:
      return 2;
    case CPO_ERR_TRANSPORT:
      return 3;
    case CPO_ERR_GENERATION:
      return 4;
    case CPO_ERR_FINALIZE:
      return 5;
    default:
      return 1;
  }
}

cpo_status cpo_config_load(const char* path, cpo_config** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new cpo_config{cpo::load_config_file(path)}; });
}

cpo_status cpo_config_default(cpo_config** out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new cpo_config{cpo::CampaignConfig{}}; });
}

cpo_status cpo_config_set_seed(cpo_config* config, long long seed) {
  if (config == nullptr) return invalid("null config");
  config->value.seed = seed;
  return CPO_OK;
}

cpo_status cpo_config_get_seed(const cpo_config* config, long long* out) {
  if (config == nullptr || out == nullptr) return invalid("null argument");
  *out = config->value.seed;
  return CPO_OK;
}

void cpo_config_free(cpo_config* config) { delete config; }

cpo_status cpo_dataset_load(const char* path, cpo_dataset** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new cpo_dataset{cpo::load_dataset(path)}; });
}

cpo_status cpo_dataset_size(const cpo_dataset* dataset, size_t* out) {
  if (dataset == nullptr || out == nullptr) return invalid("null argument");
  *out = dataset->value.items.size();
  return CPO_OK;
}

cpo_status cpo_dataset_sample(const cpo_dataset* dataset, size_t count,
                              long long seed, cpo_dataset** out) {
  if (dataset == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = new cpo_dataset{cpo::sample_pdset(dataset->value, count, seed)};
  });
}

void cpo_dataset_free(cpo_dataset* dataset) { delete dataset; }

cpo_status cpo_grade_response(const char* response_text,
                              const char* ground_truth, int* out_correct,
                              char** out_extracted) {
  if (response_text == nullptr || ground_truth == nullptr ||
      out_correct == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    cpo::GradeResult result = cpo::grade(response_text, ground_truth);
    *out_correct = result.correct ? 1 : 0;
    if (out_extracted != nullptr) {
      *out_extracted =
          result.extracted ? dup_string(*result.extracted) : nullptr;
    }
  });
}

cpo_status cpo_answers_equivalent(const char* a, const char* b,
                                  int* out_equivalent) {
  if (a == nullptr || b == nullptr || out_equivalent == nullptr) {
    return invalid("null argument");
  }
  return guarded(
      [&] { *out_equivalent = cpo::answers_equivalent(a, b) ? 1 : 0; });
}

cpo_status cpo_campaign_open(const cpo_config* config, const char* backend,
                             const cpo_dataset* dataset, size_t pdset_size,
                             const char* run_dir, cpo_campaign** out) {
  if (config == nullptr || backend == nullptr || dataset == nullptr ||
      run_dir == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    const size_t available = dataset->value.items.size();
    const size_t target =
        pdset_size != 0 ? pdset_size
                        : std::min(cpo::kDefaultPdsetSize, available);
    cpo::EvalDataset pdset =
        target >= available && pdset_size == 0
            ? dataset->value
            : cpo::sample_pdset(dataset->value, target, config->value.seed);
    *out = new cpo_campaign{config->value, std::move(pdset), backend, run_dir,
                            std::nullopt};
  });
}

cpo_status cpo_campaign_execute(cpo_campaign* campaign) {
  if (campaign == nullptr) return invalid("null campaign");
  return guarded([&] {
    cpo::CampaignOptions options;
    options.backend = campaign->backend;
    cpo::Campaign run(campaign->config, campaign->pdset, campaign->run_dir,
                      options);
    campaign->result = run.run();
  });
}

cpo_status cpo_campaign_summary_text(const cpo_campaign* campaign,
                                     char** out_text) {
  if (campaign == nullptr || out_text == nullptr) {
    return invalid("null argument");
  }
  if (!campaign->result) {
    g_last_error = "campaign has not been executed";
    return CPO_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { *out_text = dup_string(campaign_summary(*campaign)); });
}

void cpo_campaign_free(cpo_campaign* campaign) { delete campaign; }

cpo_status cpo_eval_run(const cpo_config* config, const char* backend,
                        const cpo_dataset* dataset, const char* suffix,
                        const char* preset, const char* baseline_run_dir,
                        const char* out_dir, char** out_text) {
  if (config == nullptr || backend == nullptr || dataset == nullptr ||
      out_text == nullptr) {
    return invalid("null argument");
  }
  if ((suffix == nullptr) == (preset == nullptr)) {
    return invalid("exactly one of suffix/preset must be given");
  }
  return guarded([&] {
    std::optional<std::string> suffix_text;
    std::optional<std::string> prefill;
    std::string label;
    if (preset != nullptr) {
      const cpo::BaselinePreset& p = cpo::preset_by_name(preset);
      suffix_text = p.suffix;
      prefill = p.assistant_prefill;
      label = "preset-" + p.name;
    } else {
      suffix_text = std::string(suffix);
      label = "eval-suffix";
    }

    auto client = make_client(config->value, backend, dataset->value);
    cpo::EvalBatch batch = cpo::evaluate_suffix(
        *client, config->value, dataset->value, label, suffix_text, prefill,
        {});
    cpo::CandidateScore score = cpo::score_candidate(batch.records);

    std::optional<cpo::CandidateScore> baseline;
    if (baseline_run_dir != nullptr) {
      cpo::RunDir dir{baseline_run_dir};
      std::vector<cpo::EvalRecord> records =
          dir.read_records("baseline.records.jsonl");
      if (records.empty()) {
        throw cpo::Error(cpo::ErrorClass::kConfig,
                         std::string("no baseline records under ") +
                             baseline_run_dir);
      }
      baseline = cpo::score_candidate(records);
      score.compression_ratio =
          cpo::compression_ratio(score.l_avg, baseline->l_avg);
    }

    std::string text = label;
    if (suffix_text) text += ": \"" + *suffix_text + "\"";
    text += "\nacc " + cpo::format_pct(score.acc_avg) + "  tok " +
            cpo::format_tok(score.l_avg);
    if (score.compression_ratio) {
      text += "  ratio " + cpo::format_pct(*score.compression_ratio) +
              " (baseline tok " + cpo::format_tok(baseline->l_avg) + ")";
    }
    text += "\nrecords " + std::to_string(score.n_records);
    if (batch.any_prefill_degraded) {
      text +=
          "\nnote: endpoint rejected assistant prefill; it was appended to "
          "the user message";
    }
    text += "\n";

    if (out_dir != nullptr) {
      namespace fs = std::filesystem;
      fs::create_directories(out_dir);
      std::ofstream records_out(fs::path(out_dir) / "eval.records.jsonl",
                                std::ios::trunc);
      for (const cpo::EvalRecord& r : batch.records) {
        records_out << cpo::to_json(r).dump() << '\n';
      }
      cpo::Json summary{{"label", label},
                        {"suffix", suffix_text ? cpo::Json(*suffix_text)
                                               : cpo::Json(nullptr)},
                        {"score", cpo::to_json(score)},
                        {"prefill_degraded", batch.any_prefill_degraded}};
      if (baseline) summary["baseline"] = cpo::to_json(*baseline);
      std::ofstream summary_out(fs::path(out_dir) / "eval.json",
                                std::ios::trunc);
      summary_out << summary.dump(2) << '\n';
    }

    *out_text = dup_string(text);
  });
}

cpo_status cpo_report_render(const char* run_dir, const char* compare_run_dir,
                             const char* out_dir, char** out_text) {
  if (run_dir == nullptr || out_text == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    cpo::RunLedger ledger = cpo::load_ledger(run_dir);
    std::optional<cpo::RunLedger> compare;
    if (compare_run_dir != nullptr) {
      compare = cpo::load_ledger(compare_run_dir);
    }
    cpo::Report report =
        cpo::build_report(ledger, compare ? &*compare : nullptr);
    if (out_dir != nullptr) {
      cpo::write_report_files(report, out_dir);
    }
    *out_text = dup_string(cpo::render_report_text(report));
  });
}

}  // extern "C"
