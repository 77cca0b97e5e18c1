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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ams/characteristic.hpp"

namespace ams {

/// One numerical check: passed iff actual lies within tolerance of expected
/// in the sense stated by `detail`.
struct CheckResult {
  std::string name;
  bool passed = false;
  double actual = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

enum class VerifyLevel { Quick, Full };

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Quick;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::size_t failures() const;
  /// One line per check.
  std::string text() const;
  std::string json() const;
};

using CoefficientRoute = std::function<OdeCoefficients(int n, int k)>;

/// Compares two coefficient routes over 3 <= n <= max_n,
/// 1 <= k <= min(max_k, n-2), at 1e-12 relative.
CheckResult check_ode_duality(const CoefficientRoute& recursion, const CoefficientRoute& expansion,
                              int max_n = 100, int max_k = 20);

CheckResult check_root_residuals();
CheckResult check_root_separation();
std::vector<CheckResult> check_k1_closed_forms();
CheckResult check_derivative_identities();
CheckResult check_boundary_weights();

/// (n, k, a, t) = (20, 3, 2, 1): analytic chi(1, 0) against the empirical
/// characteristic function of `runs` seeded AMS runs, within 5 / sqrt(runs).
CheckResult check_chi_monte_carlo(std::uint64_t runs = 1000000, std::uint64_t master_seed = 2024);
std::vector<CheckResult> check_functional_equation();
std::vector<CheckResult> check_root_asymptotics();
CheckResult check_phi_trend();
CheckResult check_chi_modulus();
std::vector<CheckResult> check_boundary_decay();

/// Quick: coefficient duality, root residuals, k = 1 closed forms and the
/// density identities. Full adds the Monte Carlo, quadrature, asymptotic and
/// limit checks. `on_check` is called as each check finishes.
VerifyReport run_verification(VerifyLevel level,
                              const std::function<void(const CheckResult&)>& on_check = {});

}  // namespace ams
