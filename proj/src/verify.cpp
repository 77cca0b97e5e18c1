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

#include "ams/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "ams/clt.hpp"
#include "ams/error.hpp"
#include "ams/rng.hpp"
#include "ams/sampling.hpp"
#include "ams/splitting.hpp"
#include "ams/stats.hpp"

namespace ams {

namespace {

CheckResult bounded(std::string name, double actual, double tolerance, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.actual = actual;
  c.expected = 0.0;
  c.tolerance = tolerance;
  c.passed = std::isfinite(actual) && actual <= tolerance;
  c.detail = std::move(detail);
  return c;
}

CheckResult errored(std::string name, const std::exception& e) {
  CheckResult c;
  c.name = std::move(name);
  c.actual = std::nan("");
  c.detail = std::string("threw: ") + e.what();
  return c;
}

double relative(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::string VerifyReport::text() const {
  std::string out;
  char buf[512];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof(buf), "%s %-28s actual=%.6g expected=%.6g tol=%.3g  %s\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.actual, c.expected, c.tolerance,
                  c.detail.c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%zu checks, %zu failed\n", checks.size(), failures());
  out += buf;
  return out;
}

std::string VerifyReport::json() const {
  using nlohmann::json;
  auto real = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["level"] = level == VerifyLevel::Quick ? "quick" : "full";
  j["passed"] = passed();
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"actual", real(c.actual)},
                   {"expected", real(c.expected)},
                   {"tolerance", real(c.tolerance)},
                   {"detail", c.detail}});
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

CheckResult check_ode_duality(const CoefficientRoute& recursion, const CoefficientRoute& expansion,
                              int max_n, int max_k) {
  double worst = 0.0;
  int worst_n = 0, worst_k = 0;
  try {
    for (int n = 3; n <= max_n; ++n) {
      for (int k = 1; k <= std::min(max_k, n - 2); ++k) {
        double d = ode_coefficient_discrepancy(recursion(n, k), expansion(n, k));
        if (!(d <= worst)) {
          worst = d;
          worst_n = n;
          worst_k = k;
        }
      }
    }
  } catch (const std::exception& e) {
    return errored("ode_duality", e);
  }
  return bounded("ode_duality", worst, 1e-12,
                 "max relative gap at (n,k)=(" + std::to_string(worst_n) + "," +
                     std::to_string(worst_k) + ")");
}

CheckResult check_root_residuals() {
  double worst = 0.0;
  try {
    for (int n : {8, 16, 32, 64, 100, 1000, 10000, 1000000}) {
      for (int k : {1, 2, 3, 5, 10}) {
        if (k > n - 2) continue;
        for (double t : {0.0, 0.5, 1.0, 2.0, -1.0}) {
          for (const Complex& root : characteristic_roots(n, k, t)) {
            worst = std::max(worst, characteristic_residual(n, k, t, root));
          }
        }
      }
    }
  } catch (const std::exception& e) {
    return errored("root_residuals", e);
  }
  return bounded("root_residuals", worst, 1e-10, "max residual over the (n,k,t) grid");
}

CheckResult check_root_separation() {
  double closest = INFINITY;
  try {
    for (int k : {2, 3, 5}) {
      for (int n : {8 * k * k, 16 * k * k, 64 * k * k}) {
        for (double t : {0.5, 1.0, 2.0}) {
          auto roots = characteristic_roots(n, k, t);
          for (std::size_t i = 0; i < roots.size(); ++i) {
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
              closest = std::min(closest, std::abs(roots[i] - roots[j]) / n);
            }
          }
        }
      }
    }
  } catch (const std::exception& e) {
    return errored("root_separation", e);
  }
  CheckResult c;
  c.name = "root_separation";
  c.actual = closest;
  c.expected = 1e-8;
  c.tolerance = 0.0;
  c.passed = closest > 1e-8;
  c.detail = "min |lambda_i - lambda_j| / n for n >= 8 k^2, must exceed expected";
  return c;
}

std::vector<CheckResult> check_k1_closed_forms() {
  std::vector<CheckResult> out;
  // Single root n (1 - e_1(t)).
  try {
    double worst = 0.0;
    for (int n : {3, 10, 100, 10000}) {
      for (double t : {0.5, 1.0, 3.0}) {
        Complex want = static_cast<double>(n) * (1.0 - resampling_phase(n, 1, t));
        worst = std::max(worst, relative(characteristic_roots(n, 1, t)[0], want));
      }
    }
    out.push_back(bounded("k1_root", worst, 1e-12, "root against n (1 - e_1(t))"));
  } catch (const std::exception& e) {
    out.push_back(errored("k1_root", e));
  }
  // chi(t, x) = exp(n (a - x) (e_1(t) - 1)), the Poisson generating function.
  try {
    double worst = 0.0;
    const double a = 2.0;
    for (int n : {8, 16, 32, 64}) {
      for (double t : {0.5, 1.0, 2.0}) {
        auto sol = solve_chi(n, 1, t, a);
        for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) {
          Complex want = std::exp(n * (a - x) * (resampling_phase(n, 1, t) - 1.0));
          worst = std::max(worst, std::abs(sol.chi(x) - want));
        }
      }
    }
    out.push_back(bounded("k1_chi", worst, 1e-10, "chi against the Poisson closed form"));
  } catch (const std::exception& e) {
    out.push_back(errored("k1_chi", e));
  }
  // E[p_hat] = exp(-a) and Var[p_hat] = exp(-2a) (exp(a/n) - 1).
  try {
    double worst = 0.0;
    for (int n : {2, 10, 100, 10000}) {
      for (double a : {0.5, 2.0, 6.0}) {
        auto law = k1_exact_law(n, a);
        worst = std::max(worst, std::abs(law.mean_phat / std::exp(-a) - 1.0));
        double var = std::exp(-2.0 * a) * (std::exp(a / n) - 1.0);
        worst = std::max(worst, std::abs(law.var_phat / var - 1.0));
      }
    }
    out.push_back(bounded("k1_moments", worst, 1e-9, "Poisson law moments of p_hat"));
  } catch (const std::exception& e) {
    out.push_back(errored("k1_moments", e));
  }
  try {
    double worst = 0.0;
    for (int n : {3, 10, 100}) {
      auto c = ode_coefficients(n, 1);
      worst = std::max({worst, std::abs(c.r.at(0) / n - 1.0), std::abs(c.mu / n + 1.0)});
    }
    out.push_back(bounded("k1_ode", worst, 1e-15, "r = [n], mu = -n"));
  } catch (const std::exception& e) {
    out.push_back(errored("k1_ode", e));
  }
  return out;
}

CheckResult check_derivative_identities() {
  double worst = 0.0;
  std::string where;
  struct Case {
    int n, k;
    double y, x;
  };
  try {
    std::vector<Case> cases = {{5, 1, 1.0, 0.2}, {10, 4, 2.0, 0.0}};
    for (int n : {4, 8, 16}) {
      for (int k = 1; k <= n - 1; k += 2) {
        for (double y : {0.3, 1.0, 2.5}) cases.push_back({n, k, y, 0.1});
      }
    }
    for (const auto& c : cases) {
      auto rep = derivative_identity_check(c.n, c.k, c.y, c.x);
      if (rep.relative_error > worst) {
        worst = rep.relative_error;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "worst at (n,k,y,x)=(%d,%d,%g,%g)", c.n, c.k, c.y, c.x);
        where = buf;
      }
    }
  } catch (const std::exception& e) {
    return errored("derivative_identities", e);
  }
  return bounded("derivative_identities", worst, 1e-5, where);
}

CheckResult check_boundary_weights() {
  double worst = 0.0;
  try {
    for (int n : {8, 16, 32, 64}) {
      for (int k : {1, 2, 3}) {
        for (double t : {0.5, 1.0}) {
          auto sol = solve_chi(n, k, t, 2.0);
          Complex sum = 0.0;
          for (const auto& w : sol.weights()) sum += w;
          worst = std::max(worst, std::abs(sum - 1.0));
        }
      }
    }
  } catch (const std::exception& e) {
    return errored("boundary_weights", e);
  }
  return bounded("boundary_weights", worst, 1e-9, "|sum eta_l - 1|, i.e. chi(t,a) = 1");
}

CheckResult check_chi_monte_carlo(std::uint64_t runs, std::uint64_t master_seed) {
  constexpr int n = 20, k = 3;
  constexpr double a = 2.0, t = 1.0;
  const double tol = 5.0 / std::sqrt(static_cast<double>(runs));
  try {
    Complex analytic = solve_chi(n, k, t, a).chi(0.0);
    AmsParams params;
    params.n = n;
    params.k = k;
    params.a = a;
    params.x = 0.0;
    params.master_seed = master_seed;
    const auto dist = DistributionModel::exponential();
    // One long stream: the runs are consecutive blocks of it.
    RngStream rng(master_seed, 0);
    const double root_n = std::sqrt(static_cast<double>(n));
    std::vector<double> re(runs), im(runs);
    for (std::uint64_t m = 0; m < runs; ++m) {
      double phase = t * root_n * std::log(run_ams(params, dist, rng).estimate);
      re[m] = std::cos(phase);
      im[m] = std::sin(phase);
    }
    Complex empirical(pairwise_sum(re) / runs, pairwise_sum(im) / runs);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "chi(1,0) analytic %.6f%+.6fi, MC %.6f%+.6fi, M=%llu",
                  analytic.real(), analytic.imag(), empirical.real(), empirical.imag(),
                  static_cast<unsigned long long>(runs));
    return bounded("chi_monte_carlo", std::abs(analytic - empirical), tol, buf);
  } catch (const std::exception& e) {
    return errored("chi_monte_carlo", e);
  }
}

std::vector<CheckResult> check_functional_equation() {
  std::vector<CheckResult> out;
  constexpr double a = 2.0;
  try {
    auto sol = solve_chi(16, 2, 1.0, a);
    for (double x : {0.0, a / 4, a / 2, 3 * a / 4}) {
      double residual = std::abs(functional_equation_rhs(sol, x) - sol.chi(x));
      char name[64];
      std::snprintf(name, sizeof(name), "functional_eq_x=%g", x);
      out.push_back(bounded(name, residual, 1e-6, "(n,k,t,a)=(16,2,1,2), quadrature vs chi"));
    }
  } catch (const std::exception& e) {
    out.push_back(errored("functional_equation", e));
  }
  return out;
}

std::vector<CheckResult> check_root_asymptotics() {
  std::vector<CheckResult> out;
  const long grid[] = {100, 10000, 1000000};
  for (int k : {1, 2, 3, 5}) {
    std::string name = "root_asymptotics_k=" + std::to_string(k);
    try {
      auto rep = asymptotic_root_check(k, 1.0, grid);
      const auto& last = rep.rows.back();
      CheckResult c;
      c.name = name;
      c.actual = std::max(last.leading_error, last.bulk_error);
      c.tolerance = 10.0 / std::sqrt(static_cast<double>(last.n));
      c.passed = rep.passed();
      char buf[200];
      std::snprintf(buf, sizeof(buf), "leading %.3g/%.3g/%.3g, bulk %.3g/%.3g/%.3g%s%s",
                    rep.rows[0].leading_error, rep.rows[1].leading_error, last.leading_error,
                    rep.rows[0].bulk_error, rep.rows[1].bulk_error, last.bulk_error,
                    rep.leading_decreasing ? "" : " leading not decreasing",
                    rep.bulk_decreasing ? "" : " bulk not decreasing");
      c.detail = buf;
      out.push_back(c);
      out.push_back(bounded("leading_root_n=1e6_k=" + std::to_string(k), last.leading_error, 0.05,
                            "|lambda_1 - (i t sqrt(n) + t^2/2)| at t = 1"));
    } catch (const std::exception& e) {
      out.push_back(errored(name, e));
    }
  }
  return out;
}

CheckResult check_phi_trend() {
  constexpr double a = 2.0, t = 1.0, x = 0.0;
  const double limit = std::exp(t * t * (x - a) / 2.0);
  try {
    std::vector<double> errors;
    for (int n : {16, 32, 64}) errors.push_back(std::abs(evaluate_phi(solve_chi(n, 2, t, a), x) - limit));
    CheckResult c;
    c.name = "phi_trend";
    c.actual = errors.back();
    c.expected = 0.0;
    c.tolerance = errors.front();
    c.passed = errors[1] < errors[0] && errors[2] < errors[1];
    char buf[160];
    std::snprintf(buf, sizeof(buf), "|phi - exp(-1)| at n=16,32,64: %.4g %.4g %.4g (k=2)",
                  errors[0], errors[1], errors[2]);
    c.detail = buf;
    return c;
  } catch (const std::exception& e) {
    return errored("phi_trend", e);
  }
}

CheckResult check_chi_modulus() {
  double worst = 0.0;
  constexpr double a = 2.0;
  try {
    for (int n : {16, 32, 64}) {
      for (int k : {1, 2, 3}) {
        for (double t : {0.5, 1.0, 2.0}) {
          auto sol = solve_chi(n, k, t, a);
          for (int i = 0; i <= 8; ++i) worst = std::max(worst, std::abs(sol.chi(a * i / 8.0)));
        }
      }
    }
  } catch (const std::exception& e) {
    return errored("chi_modulus", e);
  }
  return bounded("chi_modulus", worst, 1.0 + 1e-9, "max |chi(t,x)| over the grid");
}

std::vector<CheckResult> check_boundary_decay() {
  std::vector<CheckResult> out;
  const int grid[] = {16, 32, 64};
  for (int k : {2, 3, 5}) {
    std::string name = "boundary_decay_k=" + std::to_string(k);
    try {
      auto rep = boundary_derivative_decay(k, 1.0, grid);
      CheckResult c;
      c.name = name;
      c.actual = rep.scaled.back().front();
      c.expected = 0.0;
      c.tolerance = rep.scaled.front().front();
      c.passed = rep.passed;
      c.detail = "|chi^(m)(a)| sqrt(n) / (n^m |t|) never above its n = 16 value";
      out.push_back(c);
    } catch (const std::exception& e) {
      out.push_back(errored(name, e));
    }
  }
  return out;
}

VerifyReport run_verification(VerifyLevel level,
                              const std::function<void(const CheckResult&)>& on_check) {
  VerifyReport report;
  report.level = level;
  auto add = [&](CheckResult c) {
    if (on_check) on_check(c);
    report.checks.push_back(std::move(c));
  };
  auto add_all = [&](std::vector<CheckResult> cs) {
    for (auto& c : cs) add(std::move(c));
  };

  add(check_ode_duality(ode_coefficients_by_recursion, ode_coefficients_by_expansion));
  add(check_root_residuals());
  add(check_root_separation());
  add_all(check_k1_closed_forms());
  add(check_derivative_identities());
  add(check_boundary_weights());
  if (level == VerifyLevel::Quick) return report;

  add_all(check_functional_equation());
  add_all(check_root_asymptotics());
  add(check_phi_trend());
  add(check_chi_modulus());
  add_all(check_boundary_decay());
  add(check_chi_monte_carlo());
  return report;
}

}  // namespace ams
