/* Copyright 2026 The cpo Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the concise-prompt optimizer. All functions return a
 * cpo_status; on failure cpo_last_error() carries a human-readable message
 * for the calling thread. Strings returned through char** out-parameters
 * are heap-allocated and must be released with cpo_string_free().
 */

#ifndef CPO_CPO_H_
#define CPO_CPO_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpo_status {
  CPO_OK = 0,
  CPO_ERR_INTERNAL = 1,
  CPO_ERR_CONFIG = 2,     /* bad config, dataset, or run-directory input */
  CPO_ERR_TRANSPORT = 3,  /* endpoint unreachable or rejected the request */
  CPO_ERR_GENERATION = 4, /* the prompt generator produced nothing usable */
  CPO_ERR_FINALIZE = 5,   /* no candidate passed the accuracy tolerance */
  CPO_ERR_INVALID_ARGUMENT = 6,
} cpo_status;

/* Opaque handles. */
typedef struct cpo_config cpo_config;
typedef struct cpo_dataset cpo_dataset;
typedef struct cpo_campaign cpo_campaign;

const char* cpo_version(void);

/* Message describing this thread's most recent failure; empty on success. */
const char* cpo_last_error(void);

void cpo_string_free(char* s);

/* Process exit code convention for a status: 0 ok, 2 config, 3 transport,
 * 4 generation, 5 finalize, 1 anything else. */
int cpo_exit_code(cpo_status status);

/* -- configuration ------------------------------------------------------ */

/* Loads and validates a flat key/value config file. */
cpo_status cpo_config_load(const char* path, cpo_config** out);

/* All defaults. */
cpo_status cpo_config_default(cpo_config** out);

cpo_status cpo_config_set_seed(cpo_config* config, long long seed);
cpo_status cpo_config_get_seed(const cpo_config* config, long long* out);

void cpo_config_free(cpo_config* config);

/* -- datasets ------------------------------------------------------------ */

/* One JSON object per line: {"id":..., "question":..., "answer":...}. */
cpo_status cpo_dataset_load(const char* path, cpo_dataset** out);

cpo_status cpo_dataset_size(const cpo_dataset* dataset, size_t* out);

/* Uniform subset of `count` items, deterministic in seed, order preserved. */
cpo_status cpo_dataset_sample(const cpo_dataset* dataset, size_t count,
                              long long seed, cpo_dataset** out);

void cpo_dataset_free(cpo_dataset* dataset);

/* -- grading ------------------------------------------------------------- */

/* Grades a model response against a ground-truth answer. *out_correct is
 * 1/0; when out_extracted is non-NULL it receives the normalized answer
 * extracted from the last \boxed{...} group, or NULL if none was found. */
cpo_status cpo_grade_response(const char* response_text,
                              const char* ground_truth, int* out_correct,
                              char** out_extracted);

cpo_status cpo_answers_equivalent(const char* a, const char* b,
                                  int* out_equivalent);

/* -- campaigns ----------------------------------------------------------- */

/* Binds a campaign to run_dir. backend is "mock" or "remote". The
 * development set is sampled from `dataset` with the config seed;
 * pdset_size 0 means min(100, dataset size). Opening an existing run
 * directory resumes it: stored records are never re-requested, and the
 * supplied configuration must match the stored snapshot exactly. */
cpo_status cpo_campaign_open(const cpo_config* config, const char* backend,
                             const cpo_dataset* dataset, size_t pdset_size,
                             const char* run_dir, cpo_campaign** out);

/* Baseline measurement, all refinement iterations, final election. */
cpo_status cpo_campaign_execute(cpo_campaign* campaign);

/* Human-readable result block (final prompt, scores, run directory). */
cpo_status cpo_campaign_summary_text(const cpo_campaign* campaign,
                                     char** out_text);

void cpo_campaign_free(cpo_campaign* campaign);

/* -- one-shot evaluation -------------------------------------------------- */

/* Evaluates one suffix (or a named preset: original, nothinking, beconcise,
 * chainofdraft) over the full dataset. Exactly one of suffix/preset must be
 * non-NULL. When baseline_run_dir is given, the stored baseline provides
 * the compression-ratio denominator. When out_dir is given, the records
 * and a JSON summary are written there. */
cpo_status cpo_eval_run(const cpo_config* config, const char* backend,
                        const cpo_dataset* dataset, const char* suffix,
                        const char* preset, const char* baseline_run_dir,
                        const char* out_dir, char** out_text);

/* -- reports -------------------------------------------------------------- */

/* Renders scoreboards from a (possibly partial) run directory; never makes
 * model calls. compare_run_dir, when non-NULL, adds a token-usage
 * correlation fit between the two runs. When out_dir is non-NULL, writes
 * report.txt and report.summary.json there. */
cpo_status cpo_report_render(const char* run_dir, const char* compare_run_dir,
                             const char* out_dir, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* CPO_CPO_H_ */
