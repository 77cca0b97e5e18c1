// Copyright 2026 The ams-clt Authors
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

#ifndef AMS_AMS_H
#define AMS_AMS_H

/* C interface to the AMS library. Every function returns an ams_status;
 * on failure ams_last_error() describes the cause for the calling thread.
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Strings returned through `const char**`
 * stay valid until the owning handle is destroyed or the call is repeated. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AMS_BUILDING_LIBRARY)
#    define AMS_API __declspec(dllexport)
#  else
#    define AMS_API __declspec(dllimport)
#  endif
#else
#  define AMS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ams_status {
  AMS_OK = 0,
  AMS_ERR_INVALID_PARAMS = 1,
  AMS_ERR_DOMAIN = 2,
  AMS_ERR_RANGE = 3,
  AMS_ERR_ITERATION_CAP = 4,
  AMS_ERR_CONVERGENCE = 5,
  AMS_ERR_SINGULAR = 6,
  AMS_ERR_IO = 7,
  AMS_ERR_PARSE = 8,
  AMS_ERR_INTERNAL = 9,
  AMS_ERR_NULL_ARGUMENT = 10
} ams_status;

AMS_API const char* ams_status_name(ams_status status);
/* Message of the last failed call on this thread, "" if none. */
AMS_API const char* ams_last_error(void);
AMS_API const char* ams_version(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct ams_config ams_config;

AMS_API ams_status ams_config_create(ams_config** out);
AMS_API void ams_config_destroy(ams_config* config);
/* Keys: distribution, a, x, n, k, M, master_seed, true_p, output, workers.
 * An unset true_p reads back as "none". */
AMS_API ams_status ams_config_set(ams_config* config, const char* key, const char* value);
AMS_API ams_status ams_config_get(const ams_config* config, const char* key, const char** value);
AMS_API ams_status ams_config_validate(const ams_config* config);
AMS_API ams_status ams_config_parse(ams_config* config, const char* text);
AMS_API ams_status ams_config_load(ams_config* config, const char* path);
AMS_API ams_status ams_config_save(const ams_config* config, const char* path);
AMS_API ams_status ams_config_serialize(const ams_config* config, const char** text);

/* ---- single run --------------------------------------------------------- */

typedef struct ams_run_result {
  double p_hat;
  uint64_t iterations;
  int survivors;
  double corrector;
  uint64_t stream_index;
  /* 95% plug-in interval; both equal p_hat when p_hat is 0 or 1. */
  double ci_lower;
  double ci_upper;
} ams_run_result;

AMS_API ams_status ams_run_single(const ams_config* config, uint64_t stream_index,
                                  ams_run_result* result);

/* ---- batches ------------------------------------------------------------ */

typedef struct ams_experiment ams_experiment;

typedef struct ams_summary {
  uint64_t runs;
  uint64_t completed;
  uint64_t failures;
  double mean;
  double variance;
  double skewness;
  double std_error;
  double reference_p;
  double scaled_variance;      /* n Var[p_hat] */
  double asymptotic_variance;  /* -p^2 log p */
  double variance_ratio;
  double ks_statistic;         /* NaN when unavailable */
  double coverage;
  double mean_iterations;
  double variance_iterations;
  double char_re;              /* empirical characteristic function at t = 1 */
  double char_im;
} ams_summary;

typedef void (*ams_progress_fn)(uint64_t finished, uint64_t total, void* user);

AMS_API ams_status ams_experiment_run(const ams_config* config, ams_progress_fn progress,
                                      void* user, ams_experiment** out);
/* Rebuilds an experiment from a CSV written by ams_experiment_write_csv. */
AMS_API ams_status ams_experiment_load_csv(const ams_config* config, const char* path,
                                           ams_experiment** out);
AMS_API void ams_experiment_destroy(ams_experiment* experiment);
AMS_API ams_status ams_experiment_summary(const ams_experiment* experiment, ams_summary* out);
AMS_API ams_status ams_experiment_estimates(const ams_experiment* experiment, double* out,
                                            size_t capacity, size_t* count);
AMS_API ams_status ams_experiment_write_csv(const ams_experiment* experiment, const char* path);
AMS_API ams_status ams_experiment_report_json(const ams_experiment* experiment, const char** json);
/* PREFIX.csv, PREFIX.json, PREFIX.cfg, PREFIX_hist.dat, PREFIX_qq.dat with
 * PREFIX the config's output key. */
AMS_API ams_status ams_experiment_write_outputs(const ams_experiment* experiment);

/* ---- analysis ----------------------------------------------------------- */

AMS_API ams_status ams_asymptotic_variance(double p, double* out);
AMS_API ams_status ams_confidence_interval(double p_hat, int n, double alpha, double* lower,
                                           double* upper);
AMS_API ams_status ams_cost_comparison(double p, double epsilon, double alpha, double* n_ams,
                                       double* n_mc);
AMS_API ams_status ams_normal_cdf(double z, double* out);
AMS_API ams_status ams_normal_quantile(double q, double* out);
AMS_API ams_status ams_lambda_transform(const char* distribution, double x, double* out);

/* Coefficients of the order-k ODE; r must hold k values. */
AMS_API ams_status ams_ode_coefficients(int n, int k, double* mu, double* r);
/* k roots as interleaved (re, im) pairs; roots must hold 2k values. */
AMS_API ams_status ams_characteristic_roots(int n, int k, double t, double* roots);

typedef struct ams_chi ams_chi;

AMS_API ams_status ams_chi_solve(int n, int k, double t, double a, ams_chi** out);
AMS_API void ams_chi_destroy(ams_chi* chi);
AMS_API ams_status ams_chi_evaluate(const ams_chi* chi, double x, double* re, double* im);
AMS_API ams_status ams_phi_evaluate(const ams_chi* chi, double x, double* re, double* im);

/* ---- verification ------------------------------------------------------- */

typedef enum ams_verify_level { AMS_VERIFY_QUICK = 0, AMS_VERIFY_FULL = 1 } ams_verify_level;

typedef struct ams_verify_report ams_verify_report;

typedef void (*ams_check_fn)(const char* name, int passed, double actual, double expected,
                             double tolerance, const char* detail, void* user);

/* Returns AMS_OK even when checks fail; query ams_verify_passed. */
AMS_API ams_status ams_verify_run(ams_verify_level level, ams_check_fn on_check, void* user,
                                  ams_verify_report** out);
AMS_API void ams_verify_destroy(ams_verify_report* report);
AMS_API int ams_verify_passed(const ams_verify_report* report);
AMS_API size_t ams_verify_failures(const ams_verify_report* report);
AMS_API ams_status ams_verify_text(const ams_verify_report* report, const char** text);
AMS_API ams_status ams_verify_json(const ams_verify_report* report, const char** json);

#ifdef __cplusplus
}
#endif

#endif /* AMS_AMS_H */
