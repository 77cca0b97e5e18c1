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

#include "ams/ams.h"

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ams/characteristic.hpp"
#include "ams/clt.hpp"
#include "ams/experiment.hpp"
#include "ams/sampling.hpp"
#include "ams/splitting.hpp"
#include "ams/stats.hpp"
#include "ams/verify.hpp"

struct ams_config {
  ams::ExperimentConfig value;
  mutable std::string scratch;
};

struct ams_experiment {
  ams::ExperimentConfig config;
  std::vector<ams::RunRecord> records;
  ams::ExperimentReport report;
  mutable std::string json;
};

struct ams_chi {
  ams::CharacteristicSolution solution;
};

struct ams_verify_report {
  ams::VerifyReport value;
  mutable std::string text;
  mutable std::string json;
};

namespace {

thread_local std::string last_error;

ams_status status_of(ams::ErrorKind kind) {
  switch (kind) {
    case ams::ErrorKind::InvalidParams: return AMS_ERR_INVALID_PARAMS;
    case ams::ErrorKind::Domain: return AMS_ERR_DOMAIN;
    case ams::ErrorKind::Range: return AMS_ERR_RANGE;
    case ams::ErrorKind::IterationCapExceeded: return AMS_ERR_ITERATION_CAP;
    case ams::ErrorKind::ConvergenceFailure: return AMS_ERR_CONVERGENCE;
    case ams::ErrorKind::SingularSystem: return AMS_ERR_SINGULAR;
    case ams::ErrorKind::Io: return AMS_ERR_IO;
    case ams::ErrorKind::Parse: return AMS_ERR_PARSE;
    case ams::ErrorKind::Internal: return AMS_ERR_INTERNAL;
  }
  return AMS_ERR_INTERNAL;
}

template <typename F>
ams_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return AMS_OK;
  } catch (const ams::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AMS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AMS_ERR_INTERNAL;
  }
}

ams_status null_argument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return AMS_ERR_NULL_ARGUMENT;
}

#define AMS_REQUIRE_ARG(p) \
  if ((p) == nullptr) return null_argument(#p)

}  // namespace

extern "C" {

const char* ams_status_name(ams_status status) {
  switch (status) {
    case AMS_OK: return "ok";
    case AMS_ERR_INVALID_PARAMS: return "invalid parameters";
    case AMS_ERR_DOMAIN: return "domain error";
    case AMS_ERR_RANGE: return "range error";
    case AMS_ERR_ITERATION_CAP: return "iteration cap exceeded";
    case AMS_ERR_CONVERGENCE: return "convergence failure";
    case AMS_ERR_SINGULAR: return "singular system";
    case AMS_ERR_IO: return "i/o error";
    case AMS_ERR_PARSE: return "parse error";
    case AMS_ERR_INTERNAL: return "internal error";
    case AMS_ERR_NULL_ARGUMENT: return "null argument";
  }
  return "unknown status";
}

const char* ams_last_error(void) { return last_error.c_str(); }

const char* ams_version(void) { return "1.0.0"; }

ams_status ams_config_create(ams_config** out) {
  AMS_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new ams_config(); });
}

void ams_config_destroy(ams_config* config) { delete config; }

ams_status ams_config_set(ams_config* config, const char* key, const char* value) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(key);
  AMS_REQUIRE_ARG(value);
  return guarded([&] { config->value.set(key, value); });
}

ams_status ams_config_get(const ams_config* config, const char* key, const char** value) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(key);
  AMS_REQUIRE_ARG(value);
  return guarded([&] {
    auto v = config->value.get(key);
    if (!v) ams::fail(ams::ErrorKind::Parse, std::string("unknown configuration key '") + key + "'");
    config->scratch = *v;
    *value = config->scratch.c_str();
  });
}

ams_status ams_config_validate(const ams_config* config) {
  AMS_REQUIRE_ARG(config);
  return guarded([&] { config->value.validate(); });
}

ams_status ams_config_parse(ams_config* config, const char* text) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(text);
  return guarded([&] { config->value = ams::ExperimentConfig::parse(text); });
}

ams_status ams_config_load(ams_config* config, const char* path) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(path);
  return guarded([&] { config->value = ams::ExperimentConfig::load(path); });
}

ams_status ams_config_save(const ams_config* config, const char* path) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(path);
  return guarded([&] { config->value.save(path); });
}

ams_status ams_config_serialize(const ams_config* config, const char** text) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(text);
  return guarded([&] {
    config->scratch = config->value.serialize();
    *text = config->scratch.c_str();
  });
}

ams_status ams_run_single(const ams_config* config, uint64_t stream_index,
                          ams_run_result* result) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(result);
  return guarded([&] {
    config->value.validate();
    auto r = ams::run_ams(config->value.params(stream_index), config->value.model());
    result->p_hat = r.estimate;
    result->iterations = r.iterations;
    result->survivors = r.survivors;
    result->corrector = r.corrector;
    result->stream_index = r.stream_index;
    result->ci_lower = result->ci_upper = r.estimate;
    if (r.estimate > 0.0 && r.estimate < 1.0) {
      auto ci = ams::confidence_interval(r.estimate, r.n, 0.05);
      result->ci_lower = ci.lower;
      result->ci_upper = ci.upper;
    }
  });
}

ams_status ams_experiment_run(const ams_config* config, ams_progress_fn progress, void* user,
                              ams_experiment** out) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<ams_experiment>();
    exp->config = config->value;
    std::function<void(std::uint64_t)> hook;
    if (progress) {
      const std::uint64_t total = exp->config.M;
      hook = [progress, user, total](std::uint64_t finished) { progress(finished, total, user); };
    }
    exp->records = ams::run_batch(exp->config, hook);
    exp->report = ams::make_report(exp->config, exp->records);
    *out = exp.release();
  });
}

ams_status ams_experiment_load_csv(const ams_config* config, const char* path,
                                   ams_experiment** out) {
  AMS_REQUIRE_ARG(config);
  AMS_REQUIRE_ARG(path);
  AMS_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    auto exp = std::make_unique<ams_experiment>();
    exp->config = config->value;
    exp->records = ams::read_records_csv(path);
    exp->config.M = exp->records.size();
    exp->report = ams::make_report(exp->config, exp->records);
    *out = exp.release();
  });
}

void ams_experiment_destroy(ams_experiment* experiment) { delete experiment; }

ams_status ams_experiment_summary(const ams_experiment* experiment, ams_summary* out) {
  AMS_REQUIRE_ARG(experiment);
  AMS_REQUIRE_ARG(out);
  return guarded([&] {
    const auto& r = experiment->report;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out->runs = r.M;
    out->completed = r.completed;
    out->failures = r.failures.size();
    out->mean = r.p_hat.mean;
    out->variance = r.p_hat.variance;
    out->skewness = r.p_hat.skewness;
    out->std_error = r.p_hat.std_error;
    out->reference_p = r.reference_p;
    out->scaled_variance = r.scaled_variance;
    out->asymptotic_variance = r.asymptotic_variance;
    out->variance_ratio = r.variance_ratio;
    out->ks_statistic = r.ks.value_or(nan);
    out->coverage = r.coverage;
    out->mean_iterations = r.mean_iterations;
    out->variance_iterations = r.variance_iterations;
    out->char_re = r.char_function ? r.char_function->real() : nan;
    out->char_im = r.char_function ? r.char_function->imag() : nan;
  });
}

ams_status ams_experiment_estimates(const ams_experiment* experiment, double* out,
                                    size_t capacity, size_t* count) {
  AMS_REQUIRE_ARG(experiment);
  AMS_REQUIRE_ARG(count);
  return guarded([&] {
    size_t written = 0;
    for (const auto& r : experiment->records) {
      if (!r.ok()) continue;
      if (out != nullptr && written < capacity) out[written] = r.p_hat;
      ++written;
    }
    *count = written;
  });
}

ams_status ams_experiment_write_csv(const ams_experiment* experiment, const char* path) {
  AMS_REQUIRE_ARG(experiment);
  AMS_REQUIRE_ARG(path);
  return guarded([&] { ams::write_records_csv(path, experiment->records); });
}

ams_status ams_experiment_report_json(const ams_experiment* experiment, const char** json) {
  AMS_REQUIRE_ARG(experiment);
  AMS_REQUIRE_ARG(json);
  return guarded([&] {
    experiment->json = ams::report_json(experiment->report);
    *json = experiment->json.c_str();
  });
}

ams_status ams_experiment_write_outputs(const ams_experiment* experiment) {
  AMS_REQUIRE_ARG(experiment);
  return guarded(
      [&] { ams::write_outputs(experiment->config, experiment->records, experiment->report); });
}

ams_status ams_asymptotic_variance(double p, double* out) {
  AMS_REQUIRE_ARG(out);
  return guarded([&] { *out = ams::asymptotic_variance(p); });
}

ams_status ams_confidence_interval(double p_hat, int n, double alpha, double* lower,
                                   double* upper) {
  AMS_REQUIRE_ARG(lower);
  AMS_REQUIRE_ARG(upper);
  return guarded([&] {
    auto ci = ams::confidence_interval(p_hat, n, alpha);
    *lower = ci.lower;
    *upper = ci.upper;
  });
}

ams_status ams_cost_comparison(double p, double epsilon, double alpha, double* n_ams,
                               double* n_mc) {
  AMS_REQUIRE_ARG(n_ams);
  AMS_REQUIRE_ARG(n_mc);
  return guarded([&] {
    auto c = ams::cost_comparison(p, epsilon, alpha);
    *n_ams = c.n_ams;
    *n_mc = c.n_mc;
  });
}

ams_status ams_normal_cdf(double z, double* out) {
  AMS_REQUIRE_ARG(out);
  return guarded([&] { *out = ams::normal_cdf(z); });
}

ams_status ams_normal_quantile(double q, double* out) {
  AMS_REQUIRE_ARG(out);
  return guarded([&] { *out = ams::normal_quantile(q); });
}

ams_status ams_lambda_transform(const char* distribution, double x, double* out) {
  AMS_REQUIRE_ARG(distribution);
  AMS_REQUIRE_ARG(out);
  return guarded(
      [&] { *out = ams::lambda_transform(ams::DistributionModel::parse(distribution), x); });
}

ams_status ams_ode_coefficients(int n, int k, double* mu, double* r) {
  AMS_REQUIRE_ARG(mu);
  AMS_REQUIRE_ARG(r);
  return guarded([&] {
    auto c = ams::ode_coefficients(n, k);
    *mu = c.mu;
    for (std::size_t m = 0; m < c.r.size(); ++m) r[m] = c.r[m];
  });
}

ams_status ams_characteristic_roots(int n, int k, double t, double* roots) {
  AMS_REQUIRE_ARG(roots);
  return guarded([&] {
    auto rs = ams::characteristic_roots(n, k, t);
    for (std::size_t l = 0; l < rs.size(); ++l) {
      roots[2 * l] = rs[l].real();
      roots[2 * l + 1] = rs[l].imag();
    }
  });
}

ams_status ams_chi_solve(int n, int k, double t, double a, ams_chi** out) {
  AMS_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] { *out = new ams_chi{ams::solve_chi(n, k, t, a)}; });
}

void ams_chi_destroy(ams_chi* chi) { delete chi; }

ams_status ams_chi_evaluate(const ams_chi* chi, double x, double* re, double* im) {
  AMS_REQUIRE_ARG(chi);
  AMS_REQUIRE_ARG(re);
  AMS_REQUIRE_ARG(im);
  return guarded([&] {
    auto v = chi->solution.chi(x);
    *re = v.real();
    *im = v.imag();
  });
}

ams_status ams_phi_evaluate(const ams_chi* chi, double x, double* re, double* im) {
  AMS_REQUIRE_ARG(chi);
  AMS_REQUIRE_ARG(re);
  AMS_REQUIRE_ARG(im);
  return guarded([&] {
    auto v = ams::evaluate_phi(chi->solution, x);
    *re = v.real();
    *im = v.imag();
  });
}

ams_status ams_verify_run(ams_verify_level level, ams_check_fn on_check, void* user,
                          ams_verify_report** out) {
  AMS_REQUIRE_ARG(out);
  *out = nullptr;
  return guarded([&] {
    std::function<void(const ams::CheckResult&)> hook;
    if (on_check) {
      hook = [on_check, user](const ams::CheckResult& c) {
        on_check(c.name.c_str(), c.passed ? 1 : 0, c.actual, c.expected, c.tolerance,
                 c.detail.c_str(), user);
      };
    }
    auto report = std::make_unique<ams_verify_report>();
    report->value = ams::run_verification(
        level == AMS_VERIFY_FULL ? ams::VerifyLevel::Full : ams::VerifyLevel::Quick, hook);
    *out = report.release();
  });
}

void ams_verify_destroy(ams_verify_report* report) { delete report; }

int ams_verify_passed(const ams_verify_report* report) {
  return report != nullptr && report->value.passed() ? 1 : 0;
}

size_t ams_verify_failures(const ams_verify_report* report) {
  return report == nullptr ? 0 : report->value.failures();
}

ams_status ams_verify_text(const ams_verify_report* report, const char** text) {
  AMS_REQUIRE_ARG(report);
  AMS_REQUIRE_ARG(text);
  return guarded([&] {
    report->text = report->value.text();
    *text = report->text.c_str();
  });
}

ams_status ams_verify_json(const ams_verify_report* report, const char** json) {
  AMS_REQUIRE_ARG(report);
  AMS_REQUIRE_ARG(json);
  return guarded([&] {
    report->json = report->value.json();
    *json = report->json.c_str();
  });
}

}  // extern "C"
