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

// Command-line front end. Everything goes through the C API in cpo/cpo.h.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "cpo/cpo.h"

namespace {

int fail(cpo_status status, const char* what) {
  std::fprintf(stderr, "cpo %s: error: %s\n", what, cpo_last_error());
  return cpo_exit_code(status);
}

struct ConfigHandle {
  cpo_config* ptr = nullptr;
  ~ConfigHandle() { cpo_config_free(ptr); }
};

struct DatasetHandle {
  cpo_dataset* ptr = nullptr;
  ~DatasetHandle() { cpo_dataset_free(ptr); }
};

cpo_status load_config(const std::string& path, bool seed_set,
                       long long seed, ConfigHandle& config) {
  cpo_status status = path.empty() ? cpo_config_default(&config.ptr)
                                   : cpo_config_load(path.c_str(), &config.ptr);
  if (status != CPO_OK) return status;
  if (seed_set) cpo_config_set_seed(config.ptr, seed);
  return CPO_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box prompt-suffix optimizer for concise reasoning"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dataset_path;
  std::string backend = "mock";
  long long seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "campaign config file");
    cmd->add_option("--backend", backend, "mock|remote")
        ->check(CLI::IsMember({"mock", "remote"}));
    cmd->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  // run
  auto* run_cmd = app.add_subcommand("run", "run a full optimization campaign");
  std::string run_out;
  size_t pdset_size = 0;
  add_common(run_cmd);
  run_cmd->add_option("--dataset", dataset_path, "question/answer jsonl file")
      ->required();
  run_cmd->add_option("--out", run_out, "run directory (created or resumed)")
      ->required();
  run_cmd->add_option("--pdset-size", pdset_size,
                      "development-set size (default min(100, dataset))");

  // eval
  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate one suffix or preset on a dataset");
  std::string eval_suffix, eval_preset, eval_baseline_run, eval_out;
  add_common(eval_cmd);
  eval_cmd->add_option("--dataset", dataset_path, "question/answer jsonl file")
      ->required();
  eval_cmd->add_option("--suffix", eval_suffix, "prompt suffix text");
  eval_cmd->add_option("--preset", eval_preset,
                       "original|nothinking|beconcise|chainofdraft");
  eval_cmd->add_option("--baseline-run", eval_baseline_run,
                       "run directory providing the baseline for ratios");
  eval_cmd->add_option("--out", eval_out, "directory for records + summary");

  // report
  auto* report_cmd =
      app.add_subcommand("report", "render scoreboards from a run directory");
  std::string report_run, report_compare, report_out;
  report_cmd->add_option("--run", report_run, "run directory")->required();
  report_cmd->add_option("--compare-run", report_compare,
                         "second run directory for the correlation fit");
  report_cmd->add_option("--out", report_out,
                         "output directory (default: the run directory)");

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    ConfigHandle config;
    if (cpo_status s = load_config(config_path, seed_set, seed, config);
        s != CPO_OK) {
      return fail(s, "run");
    }
    DatasetHandle dataset;
    if (cpo_status s = cpo_dataset_load(dataset_path.c_str(), &dataset.ptr);
        s != CPO_OK) {
      return fail(s, "run");
    }
    cpo_campaign* campaign = nullptr;
    cpo_status s = cpo_campaign_open(config.ptr, backend.c_str(), dataset.ptr,
                                     pdset_size, run_out.c_str(), &campaign);
    if (s != CPO_OK) return fail(s, "run");
    s = cpo_campaign_execute(campaign);
    if (s != CPO_OK) {
      cpo_campaign_free(campaign);
      return fail(s, "run");
    }
    char* text = nullptr;
    s = cpo_campaign_summary_text(campaign, &text);
    if (s == CPO_OK) {
      std::fputs(text, stdout);
      cpo_string_free(text);
    }
    cpo_campaign_free(campaign);
    return s == CPO_OK ? 0 : fail(s, "run");
  }

  if (eval_cmd->parsed()) {
    if (eval_suffix.empty() == eval_preset.empty()) {
      std::fprintf(stderr,
                   "cpo eval: error: exactly one of --suffix/--preset is "
                   "required\n");
      return 2;
    }
    ConfigHandle config;
    if (cpo_status s = load_config(config_path, seed_set, seed, config);
        s != CPO_OK) {
      return fail(s, "eval");
    }
    DatasetHandle dataset;
    if (cpo_status s = cpo_dataset_load(dataset_path.c_str(), &dataset.ptr);
        s != CPO_OK) {
      return fail(s, "eval");
    }
    char* text = nullptr;
    cpo_status s = cpo_eval_run(
        config.ptr, backend.c_str(), dataset.ptr,
        eval_suffix.empty() ? nullptr : eval_suffix.c_str(),
        eval_preset.empty() ? nullptr : eval_preset.c_str(),
        eval_baseline_run.empty() ? nullptr : eval_baseline_run.c_str(),
        eval_out.empty() ? nullptr : eval_out.c_str(), &text);
    if (s != CPO_OK) return fail(s, "eval");
    std::fputs(text, stdout);
    cpo_string_free(text);
    return 0;
  }

  if (report_cmd->parsed()) {
    const std::string out =
        report_out.empty() ? report_run : report_out;
    char* text = nullptr;
    cpo_status s = cpo_report_render(
        report_run.c_str(),
        report_compare.empty() ? nullptr : report_compare.c_str(),
        out.c_str(), &text);
    if (s != CPO_OK) return fail(s, "report");
    std::fputs(text, stdout);
    cpo_string_free(text);
    return 0;
  }

  return 0;
}
