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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "ams/ams.h"

namespace {

struct ConfigHandle {
  ams_config* ptr = nullptr;
  ConfigHandle() { EXPECT_EQ(ams_config_create(&ptr), AMS_OK); }
  ~ConfigHandle() { ams_config_destroy(ptr); }
};

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ams_c_api";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(ams_status_name(AMS_OK), "ok");
  EXPECT_STREQ(ams_status_name(AMS_ERR_INVALID_PARAMS), "invalid parameters");
  EXPECT_STREQ(ams_status_name(AMS_ERR_ITERATION_CAP), "iteration cap exceeded");
  EXPECT_STREQ(ams_status_name(AMS_ERR_NULL_ARGUMENT), "null argument");
  EXPECT_STREQ(ams_version(), "1.0.0");
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(ams_config_create(nullptr), AMS_ERR_NULL_ARGUMENT);
  EXPECT_EQ(ams_config_set(nullptr, "n", "10"), AMS_ERR_NULL_ARGUMENT);
  double v = 0.0;
  EXPECT_EQ(ams_normal_cdf(0.0, nullptr), AMS_ERR_NULL_ARGUMENT);
  EXPECT_EQ(ams_lambda_transform(nullptr, 1.0, &v), AMS_ERR_NULL_ARGUMENT);
  EXPECT_GT(std::strlen(ams_last_error()), 0u);
  ams_config_destroy(nullptr);
  ams_experiment_destroy(nullptr);
  ams_chi_destroy(nullptr);
  ams_verify_destroy(nullptr);
}

TEST(CApi, ConfigOperations) {
  ConfigHandle c;
  EXPECT_EQ(ams_config_set(c.ptr, "n", "200"), AMS_OK);
  const char* value = nullptr;
  EXPECT_EQ(ams_config_get(c.ptr, "n", &value), AMS_OK);
  EXPECT_STREQ(value, "200");
  EXPECT_EQ(ams_config_get(c.ptr, "true_p", &value), AMS_OK);
  EXPECT_STREQ(value, "none");
  EXPECT_EQ(ams_config_get(c.ptr, "bogus", &value), AMS_ERR_PARSE);
  EXPECT_EQ(ams_config_set(c.ptr, "n", "lots"), AMS_ERR_PARSE);
  EXPECT_EQ(ams_config_set(c.ptr, "k", "200"), AMS_OK);
  EXPECT_EQ(ams_config_validate(c.ptr), AMS_ERR_INVALID_PARAMS);
  EXPECT_NE(std::string(ams_last_error()).find("k"), std::string::npos);
  EXPECT_EQ(ams_config_set(c.ptr, "k", "10"), AMS_OK);
  EXPECT_EQ(ams_config_validate(c.ptr), AMS_OK);

  const char* text = nullptr;
  ASSERT_EQ(ams_config_serialize(c.ptr, &text), AMS_OK);
  std::string saved = text;
  ConfigHandle other;
  ASSERT_EQ(ams_config_parse(other.ptr, saved.c_str()), AMS_OK);
  ASSERT_EQ(ams_config_serialize(other.ptr, &text), AMS_OK);
  EXPECT_EQ(saved, text);

  auto path = scratch("config.cfg");
  ASSERT_EQ(ams_config_save(c.ptr, path.c_str()), AMS_OK);
  ConfigHandle loaded;
  ASSERT_EQ(ams_config_load(loaded.ptr, path.c_str()), AMS_OK);
  ASSERT_EQ(ams_config_serialize(loaded.ptr, &text), AMS_OK);
  EXPECT_EQ(saved, text);
  EXPECT_EQ(ams_config_load(loaded.ptr, scratch("missing.cfg").c_str()), AMS_ERR_IO);
}

TEST(CApi, SingleRunIsDeterministic) {
  ConfigHandle c;
  ams_config_set(c.ptr, "n", "100");
  ams_config_set(c.ptr, "k", "10");
  ams_config_set(c.ptr, "master_seed", "7");
  ams_run_result first{}, second{}, other{};
  ASSERT_EQ(ams_run_single(c.ptr, 3, &first), AMS_OK);
  ASSERT_EQ(ams_run_single(c.ptr, 3, &second), AMS_OK);
  ASSERT_EQ(ams_run_single(c.ptr, 4, &other), AMS_OK);
  EXPECT_EQ(first.p_hat, second.p_hat);
  EXPECT_EQ(first.iterations, second.iterations);
  EXPECT_EQ(first.stream_index, 3u);
  EXPECT_NE(first.p_hat, other.p_hat);
  EXPECT_EQ(first.p_hat, first.corrector * std::pow(0.9, static_cast<double>(first.iterations)));
  EXPECT_LT(first.ci_lower, first.p_hat);
  EXPECT_GT(first.ci_upper, first.p_hat);

  ams_config_set(c.ptr, "x", "7");
  ams_run_result trivial{};
  ASSERT_EQ(ams_run_single(c.ptr, 0, &trivial), AMS_OK);
  EXPECT_EQ(trivial.p_hat, 1.0);
  EXPECT_EQ(trivial.iterations, 0u);
}

void count_progress(uint64_t, uint64_t, void* user) { ++*static_cast<int*>(user); }

TEST(CApi, ExperimentAndCsv) {
  ConfigHandle c;
  ams_config_set(c.ptr, "n", "50");
  ams_config_set(c.ptr, "k", "5");
  ams_config_set(c.ptr, "a", "3");
  ams_config_set(c.ptr, "M", "200");
  ams_config_set(c.ptr, "true_p", "0.049787068367863944");
  auto prefix = scratch("batch");
  ams_config_set(c.ptr, "output", prefix.c_str());
  int calls = 0;
  ams_experiment* exp = nullptr;
  ASSERT_EQ(ams_experiment_run(c.ptr, count_progress, &calls, &exp), AMS_OK);
  EXPECT_EQ(calls, 200);

  ams_summary s{};
  ASSERT_EQ(ams_experiment_summary(exp, &s), AMS_OK);
  EXPECT_EQ(s.runs, 200u);
  EXPECT_EQ(s.completed, 200u);
  EXPECT_NEAR(s.mean, std::exp(-3.0), 5.0 * s.std_error);
  EXPECT_FALSE(std::isnan(s.ks_statistic));

  size_t count = 0;
  ASSERT_EQ(ams_experiment_estimates(exp, nullptr, 0, &count), AMS_OK);
  ASSERT_EQ(count, 200u);
  std::vector<double> values(count);
  ASSERT_EQ(ams_experiment_estimates(exp, values.data(), values.size(), &count), AMS_OK);

  const char* json = nullptr;
  ASSERT_EQ(ams_experiment_report_json(exp, &json), AMS_OK);
  EXPECT_NE(std::string(json).find("\"variance_ratio\""), std::string::npos);
  ASSERT_EQ(ams_experiment_write_outputs(exp), AMS_OK);

  auto csv = prefix + ".csv";
  ams_experiment* reloaded = nullptr;
  ASSERT_EQ(ams_experiment_load_csv(c.ptr, csv.c_str(), &reloaded), AMS_OK);
  std::vector<double> again(count);
  ASSERT_EQ(ams_experiment_estimates(reloaded, again.data(), again.size(), &count), AMS_OK);
  EXPECT_EQ(values, again);
  ams_summary s2{};
  ASSERT_EQ(ams_experiment_summary(reloaded, &s2), AMS_OK);
  EXPECT_EQ(s.mean, s2.mean);
  EXPECT_EQ(s.variance, s2.variance);

  EXPECT_EQ(ams_experiment_load_csv(c.ptr, scratch("none.csv").c_str(), &reloaded), AMS_ERR_IO);
  EXPECT_EQ(reloaded, nullptr);
  ams_experiment_destroy(exp);
}

TEST(CApi, AnalysisFunctions) {
  double v = 0.0, lo = 0.0, hi = 0.0;
  ASSERT_EQ(ams_asymptotic_variance(std::exp(-6.0), &v), AMS_OK);
  EXPECT_NEAR(v, 6.0 * std::exp(-12.0), 1e-18);
  EXPECT_EQ(ams_asymptotic_variance(0.0, &v), AMS_ERR_DOMAIN);
  ASSERT_EQ(ams_confidence_interval(std::exp(-6.0), 10000, 0.05, &lo, &hi), AMS_OK);
  EXPECT_LT(lo, std::exp(-6.0));
  EXPECT_GT(hi, std::exp(-6.0));
  ASSERT_EQ(ams_normal_cdf(1.959963984540054, &v), AMS_OK);
  EXPECT_NEAR(v, 0.975, 1e-12);
  ASSERT_EQ(ams_normal_quantile(0.975, &v), AMS_OK);
  EXPECT_NEAR(v, 1.959963984540054, 1e-12);
  EXPECT_EQ(ams_normal_quantile(1.0, &v), AMS_ERR_DOMAIN);
  ASSERT_EQ(ams_lambda_transform("weibull(2,1)", 1.5, &v), AMS_OK);
  EXPECT_NEAR(v, 2.25, 1e-12);
  EXPECT_EQ(ams_lambda_transform("gamma(2)", 1.0, &v), AMS_ERR_PARSE);
  double n_ams = 0.0, n_mc = 0.0;
  ASSERT_EQ(ams_cost_comparison(1e-9, 0.1, 0.05, &n_ams, &n_mc), AMS_OK);
  EXPECT_LT(n_ams, n_mc);

  double mu = 0.0, r[2] = {0.0, 0.0};
  ASSERT_EQ(ams_ode_coefficients(10, 2, &mu, r), AMS_OK);
  EXPECT_EQ(mu, 90.0);
  EXPECT_EQ(r[0], -90.0);
  EXPECT_EQ(r[1], 19.0);
  EXPECT_EQ(ams_ode_coefficients(10, 9, &mu, r), AMS_ERR_RANGE);

  double roots[2] = {0.0, 0.0};
  ASSERT_EQ(ams_characteristic_roots(100, 1, 0.0, roots), AMS_OK);
  EXPECT_NEAR(roots[0], 0.0, 1e-9);
  EXPECT_NEAR(roots[1], 0.0, 1e-9);
}

TEST(CApi, ChiHandle) {
  ams_chi* chi = nullptr;
  ASSERT_EQ(ams_chi_solve(20, 3, 1.0, 2.0, &chi), AMS_OK);
  double re = 0.0, im = 0.0;
  ASSERT_EQ(ams_chi_evaluate(chi, 2.0, &re, &im), AMS_OK);
  EXPECT_NEAR(re, 1.0, 1e-12);
  EXPECT_NEAR(im, 0.0, 1e-12);
  ASSERT_EQ(ams_phi_evaluate(chi, 0.0, &re, &im), AMS_OK);
  EXPECT_LE(std::hypot(re, im), 1.0);
  EXPECT_EQ(ams_phi_evaluate(chi, 3.0, &re, &im), AMS_ERR_DOMAIN);
  ams_chi_destroy(chi);
  EXPECT_EQ(ams_chi_solve(100, 3, 1.0, 2.0, &chi), AMS_ERR_RANGE);
  EXPECT_EQ(chi, nullptr);
}

void collect(const char* name, int, double, double, double, const char*, void* user) {
  static_cast<std::vector<std::string>*>(user)->push_back(name);
}

TEST(CApi, VerifyQuick) {
  std::vector<std::string> names;
  ams_verify_report* report = nullptr;
  ASSERT_EQ(ams_verify_run(AMS_VERIFY_QUICK, collect, &names, &report), AMS_OK);
  EXPECT_EQ(ams_verify_passed(report), 1);
  EXPECT_EQ(ams_verify_failures(report), 0u);
  EXPECT_FALSE(names.empty());
  const char* text = nullptr;
  ASSERT_EQ(ams_verify_text(report, &text), AMS_OK);
  EXPECT_NE(std::string(text).find("ode_duality"), std::string::npos);
  ASSERT_EQ(ams_verify_json(report, &text), AMS_OK);
  EXPECT_NE(std::string(text).find("\"passed\": true"), std::string::npos);
  ams_verify_destroy(report);
}

}  // namespace
