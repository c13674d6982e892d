// Copyright 2026 The clustereval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLUSTEREVAL_CLUSTEREVAL_H_
#define CLUSTEREVAL_CLUSTEREVAL_H_

/*
 * C interface to clustereval. All objects are opaque handles created and
 * destroyed through this API. Every function that can fail returns a
 * ce_status; on failure a message is available from ce_last_error() on the
 * calling thread until the next failing call.
 *
 * Status values double as the exit codes of the command-line tool.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CLUSTEREVAL_BUILDING)
#    define CE_API __declspec(dllexport)
#  else
#    define CE_API __declspec(dllimport)
#  endif
#else
#  define CE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ce_status {
  CE_OK = 0,
  CE_ERR_INVALID_ARGUMENT = 1,
  CE_ERR_PARSE = 2,
  CE_ERR_VALIDATION = 3,
  CE_ERR_INTERNAL = 4,
  /* 5 is reserved for "engines disagree" in the command-line tool. */
  CE_ERR_PAIR_BUDGET = 6,
  CE_ERR_IO = 7,
  CE_ERR_OUT_OF_MEMORY = 8
} ce_status;

typedef enum ce_role { CE_ROLE_TRUTH = 0, CE_ROLE_PREDICTED = 1 } ce_role;

typedef enum ce_format {
  CE_FORMAT_AUTO = 0,
  CE_FORMAT_CLUSTERS = 1, /* one cluster per line */
  CE_FORMAT_PAIRS = 2     /* instance<TAB>label per line */
} ce_format;

typedef enum ce_coverage {
  CE_COVERAGE_STRICT = 0,
  CE_COVERAGE_LENIENT = 1
} ce_coverage;

typedef enum ce_engine {
  CE_ENGINE_SINGLE_PASS = 0,
  CE_ENGINE_ORACLE = 1
} ce_engine;

typedef enum ce_measure {
  CE_MEASURE_CLUSTER_F = 0,
  CE_MEASURE_K_METRIC = 1,
  CE_MEASURE_B_CUBED = 2,
  CE_MEASURE_SE_LE = 3,
  CE_MEASURE_PAIRWISE = 4
} ce_measure;

#define CE_MEASURE_BIT(m) (1u << (unsigned)(m))
#define CE_MEASURES_ALL 0x1fu

typedef enum ce_style { CE_STYLE_MACHINE = 0, CE_STYLE_TABLE = 1 } ce_style;

typedef struct ce_triple {
  double recall;
  double precision;
  double combined;
  int geometric; /* 1 if combined is the geometric mean, 0 if harmonic */
} ce_triple;

typedef struct ce_stats {
  uint64_t truth_clusters;
  uint64_t predicted_clusters;
  uint64_t instances;
  uint64_t extra_predicted;
  int has_pairs; /* pair totals are set only when pairwise was evaluated */
  uint64_t truth_pairs;
  uint64_t predicted_pairs;
  uint64_t intersection_pairs;
} ce_stats;

typedef struct ce_synth_config {
  uint64_t n_instances;
  uint64_t n_truth_clusters;
  double size_skew;
  double split_rate;
  double merge_rate;
  uint64_t seed;
} ce_synth_config;

typedef struct ce_context ce_context;
typedef struct ce_report ce_report;

CE_API const char* ce_version(void);
CE_API const char* ce_last_error(void);
CE_API const char* ce_status_name(ce_status status);

/* Evaluation context: one shared id space, a truth and a predicted
 * clustering, a coverage mode (strict by default) and an oracle pair budget
 * (10^8 by default). */
CE_API ce_status ce_context_create(ce_context** out);
CE_API void ce_context_destroy(ce_context* ctx);
CE_API ce_status ce_context_set_coverage(ce_context* ctx, ce_coverage mode);
CE_API ce_status ce_context_set_pair_budget(ce_context* ctx, uint64_t pairs);

CE_API ce_status ce_context_load_file(ce_context* ctx, ce_role role,
                                      const char* path, ce_format format);
CE_API ce_status ce_context_load_text(ce_context* ctx, ce_role role,
                                      const char* text, size_t length,
                                      ce_format format);
/* Replaces both clusterings (and the id space) with a synthetic pair. */
CE_API ce_status ce_context_generate(ce_context* ctx,
                                     const ce_synth_config* config);
CE_API ce_status ce_context_write_file(const ce_context* ctx, ce_role role,
                                       const char* path, ce_format format);
CE_API ce_status ce_context_validate(ce_context* ctx);
CE_API ce_status ce_context_instance_count(const ce_context* ctx,
                                           ce_role role, uint64_t* out);

/* `measures` is a bit set of CE_MEASURE_BIT values. */
CE_API ce_status ce_evaluate(ce_context* ctx, ce_engine engine,
                             unsigned measures, ce_report** out);
CE_API void ce_report_destroy(ce_report* report);

/* For CE_MEASURE_SE_LE this yields the converted (1-SE, 1-LE, F) triple.
 * CE_ERR_INVALID_ARGUMENT if the measure was not evaluated. */
CE_API ce_status ce_report_triple(const ce_report* report, ce_measure measure,
                                  ce_triple* out);
CE_API ce_status ce_report_se_le(const ce_report* report, double* se,
                                 double* le);
CE_API ce_status ce_report_stats(const ce_report* report, ce_stats* out);
CE_API size_t ce_report_flag_count(const ce_report* report);
CE_API const char* ce_report_flag(const ce_report* report, size_t index);
CE_API double ce_report_seconds(const ce_report* report);
CE_API ce_status ce_report_render(const ce_report* report, ce_style style,
                                  char** out);
/* Largest absolute difference over shared measures; +inf when the reports
 * differ structurally. */
CE_API ce_status ce_report_distance(const ce_report* a, const ce_report* b,
                                    double* out);
CE_API void ce_string_free(char* s);

CE_API const char* ce_measure_name(ce_measure measure);
CE_API ce_status ce_measure_from_name(const char* name, ce_measure* out);
CE_API ce_status ce_synth_random_config(uint64_t seed, uint64_t max_n,
                                        ce_synth_config* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* CLUSTEREVAL_CLUSTEREVAL_H_ */
