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

#include <chrono>
#include <string>

#include <json.hpp>

#include "ams/characteristic.hpp"
#include "ams/verify.hpp"

namespace {

void expect_all_pass(const std::vector<ams::CheckResult>& checks) {
  for (const auto& c : checks) {
    EXPECT_TRUE(c.passed) << c.name << ": actual " << c.actual << ", tolerance " << c.tolerance
                          << " (" << c.detail << ")";
  }
}

TEST(Verify, QuickLevelPassesPromptly) {
  auto start = std::chrono::steady_clock::now();
  std::size_t streamed = 0;
  auto report = ams::run_verification(ams::VerifyLevel::Quick,
                                      [&](const ams::CheckResult&) { ++streamed; });
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect_all_pass(report.checks);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.failures(), 0u);
  EXPECT_EQ(streamed, report.checks.size());
  EXPECT_LT(seconds, 10.0);
}

TEST(Verify, DualityCatchesASignError) {
  auto broken = [](int n, int k) {
    auto c = ams::ode_coefficients_by_recursion(n, k);
    if (k >= 2) c.r[0] = -c.r[0];
    return c;
  };
  auto bad = ams::check_ode_duality(broken, ams::ode_coefficients_by_expansion, 20, 5);
  EXPECT_FALSE(bad.passed);
  EXPECT_GT(bad.actual, 1.0);

  auto good = ams::check_ode_duality(ams::ode_coefficients_by_recursion,
                                     ams::ode_coefficients_by_expansion, 20, 5);
  EXPECT_TRUE(good.passed);
}

TEST(Verify, FailureIsReported) {
  ams::VerifyReport report;
  report.checks.push_back({"fine", true, 0.0, 0.0, 1.0, ""});
  report.checks.push_back({"broken", false, 2.0, 0.0, 1.0, "too large"});
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.failures(), 1u);
  EXPECT_NE(report.text().find("broken"), std::string::npos);
  auto j = nlohmann::json::parse(report.json());
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 2u);
}

TEST(Verify, FullLevelChecks) {
  expect_all_pass(ams::check_functional_equation());
  expect_all_pass(ams::check_root_asymptotics());
  expect_all_pass({ams::check_phi_trend()});
  expect_all_pass({ams::check_chi_modulus()});
  expect_all_pass(ams::check_boundary_decay());
  expect_all_pass({ams::check_chi_monte_carlo(100000, 2024)});
}

}  // namespace
