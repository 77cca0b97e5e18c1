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
#include <complex>
#include <numbers>
#include <vector>

#include "ams/characteristic.hpp"
#include "ams/error.hpp"
#include "ams/rng.hpp"
#include "ams/sampling.hpp"
#include "ams/splitting.hpp"
#include "ams/stats.hpp"

namespace {

using ams::Complex;
using ams::ErrorKind;

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const ams::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ams::Error thrown";
  return ErrorKind::Internal;
}

// Coefficients of prod_{j<k} (lambda - n + j), lowest degree first, by
// repeated multiplication in long double.
std::vector<long double> falling_polynomial(int n, int k) {
  std::vector<long double> c{1.0L};
  for (int j = 0; j < k; ++j) {
    std::vector<long double> next(c.size() + 1, 0.0L);
    const long double root = n - j;
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = std::move(next);
  }
  return c;
}

Complex product_residual(int n, int k, double t, Complex lambda) {
  Complex prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= 1.0 - lambda / static_cast<double>(n - j);
  Complex phase = std::polar(1.0, t * std::sqrt(static_cast<double>(n)) *
                                      std::log(1.0 - static_cast<double>(k) / n));
  return prod - phase;
}

TEST(OdeCoefficients, SmallCase) {
  auto c = ams::ode_coefficients(10, 2);
  EXPECT_DOUBLE_EQ(c.mu, 90.0);
  ASSERT_EQ(c.r.size(), 2u);
  EXPECT_DOUBLE_EQ(c.r[1], 19.0);
  EXPECT_DOUBLE_EQ(c.r[0], -90.0);
}

TEST(OdeCoefficients, FirstOrder) {
  for (int n : {3, 10, 64, 1000}) {
    auto c = ams::ode_coefficients(n, 1);
    EXPECT_DOUBLE_EQ(c.mu, -n);
    ASSERT_EQ(c.r.size(), 1u);
    EXPECT_DOUBLE_EQ(c.r[0], n);
  }
}

TEST(OdeCoefficients, RoutesAgreeWithIndependentExpansion) {
  for (int n : {5, 20, 50}) {
    for (int k = 1; k <= std::min(10, n - 2); ++k) {
      auto rec = ams::ode_coefficients_by_recursion(n, k);
      auto exp = ams::ode_coefficients_by_expansion(n, k);
      EXPECT_LE(ams::ode_coefficient_discrepancy(rec, exp), 1e-12) << n << "," << k;
      auto poly = falling_polynomial(n, k);
      for (int m = 0; m < k; ++m) {
        const double want = static_cast<double>(-poly[m]);
        EXPECT_NEAR(rec.r[m], want, 1e-12 * std::max(1.0, std::abs(want))) << n << "," << k;
      }
      const double mu = static_cast<double>(poly[0]);
      EXPECT_NEAR(rec.mu, mu, 1e-12 * std::abs(mu));
    }
  }
}

TEST(OdeCoefficients, PolynomialVanishesOnShiftedIntegers) {
  auto c = ams::ode_coefficients(50, 5);
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(c.polynomial(50.0 - j), 0.0, 1e-3);
  EXPECT_GT(std::abs(c.polynomial(40.0)), 1.0);
}

TEST(OdeCoefficients, RangeErrors) {
  EXPECT_EQ(kind_of([] { ams::ode_coefficients(10, 9); }), ErrorKind::Range);
  EXPECT_EQ(kind_of([] { ams::ode_coefficients(10, 0); }), ErrorKind::Range);
}

TEST(CharacteristicRoots, ResidualsAgainstProductForm) {
  for (int n : {10, 64, 1000}) {
    for (int k : {1, 2, 5}) {
      for (double t : {0.0, 0.5, 2.0}) {
        auto roots = ams::characteristic_roots(n, k, t);
        ASSERT_EQ(roots.size(), static_cast<std::size_t>(k));
        for (const auto& r : roots) {
          EXPECT_LE(std::abs(product_residual(n, k, t, r)), 1e-10) << n << "," << k << "," << t;
        }
      }
    }
  }
}

TEST(CharacteristicRoots, ZeroFrequencyHasZeroRoot) {
  auto roots = ams::characteristic_roots(30, 4, 0.0);
  EXPECT_LE(std::abs(roots[0]), 1e-9);
}

TEST(CharacteristicRoots, FirstOrderClosedForm) {
  for (int n : {5, 100}) {
    for (double t : {0.3, 1.0}) {
      Complex want = static_cast<double>(n) * (1.0 - ams::resampling_phase(n, 1, t));
      EXPECT_LE(std::abs(ams::characteristic_roots(n, 1, t)[0] - want), 1e-9 * n);
    }
  }
}

TEST(CharacteristicRoots, LeadingRootForLargeN) {
  auto roots = ams::characteristic_roots(1000000, 3, 1.0);
  EXPECT_LE(std::abs(roots[0] - Complex(0.5, 1000.0)), 0.05);
}

TEST(CharacteristicRoots, AsymptoticCheck) {
  const long grid[] = {100, 10000, 1000000};
  auto two = ams::asymptotic_root_check(2, 1.0, grid);
  EXPECT_TRUE(two.passed());
  ASSERT_EQ(two.rows.size(), 3u);
  EXPECT_GT(two.rows[0].leading_error, two.rows[2].leading_error);

  auto one = ams::asymptotic_root_check(1, 1.0, grid);
  EXPECT_TRUE(one.passed());
  for (const auto& row : one.rows) EXPECT_EQ(row.bulk_error, 0.0);
}

TEST(Theta, ValueAtThresholdIsOne) {
  ams::ThetaFunction theta(10, 3, 1.0, 2.0);
  EXPECT_NEAR(std::abs(theta(2.0) - Complex(1.0)), 0.0, 1e-14);
}

TEST(Theta, ZeroFrequencyIsOrderStatisticSurvival) {
  const int n = 12, k = 4;
  const double a = 1.5;
  ams::ThetaFunction theta(n, k, 0.0, a);
  for (double x : {0.0, 0.4, 1.0, 1.4}) {
    double want = 1.0 - ams::order_statistic_cdf(n, k, a, x);
    EXPECT_NEAR(theta(x).real(), want, 1e-12);
    EXPECT_NEAR(theta(x).imag(), 0.0, 1e-14);
  }
}

TEST(Theta, PolynomialMatchesDirectSum) {
  ams::ThetaFunction theta(10, 3, 1.0, 1.0);
  EXPECT_LE(std::abs(theta(0.5) - theta.direct(0.5)), 1e-10);
  for (double x : {0.0, 0.25, 0.9}) EXPECT_LE(std::abs(theta(x) - theta.direct(x)), 1e-10);
  const auto& c = theta.coefficients();
  for (int j = 0; j < 10 - 3 + 1; ++j) EXPECT_EQ(c[j], Complex(0.0));
}

TEST(Theta, Limits) {
  EXPECT_EQ(kind_of([] { ams::ThetaFunction(65, 2, 1.0, 1.0); }), ErrorKind::Range);
  EXPECT_EQ(kind_of([] { ams::ThetaFunction(10, 10, 1.0, 1.0); }), ErrorKind::Domain);
}

TEST(Theta, ThresholdDerivativesMatchPolynomial) {
  ams::ThetaFunction theta(16, 4, 0.7, 2.0);
  for (int m = 0; m < 6; ++m) {
    Complex series = theta.derivative_at_threshold(m);
    Complex poly = theta.derivative(m, 2.0);
    EXPECT_LE(std::abs(series - poly), 1e-9 * std::max(1.0, std::abs(poly))) << m;
  }
  // Finite difference of the first derivative at an interior point.
  const double x = 1.1, h = 1e-5;
  Complex fd = (theta(x + h) - theta(x - h)) / (2.0 * h);
  EXPECT_LE(std::abs(fd - theta.derivative(1, x)), 1e-6);
}

TEST(SolveChi, BoundaryAndZeroFrequency) {
  auto sol = ams::solve_chi(20, 3, 1.0, 2.0);
  EXPECT_LE(std::abs(sol.chi(2.0) - Complex(1.0)), 1e-12);

  auto flat = ams::solve_chi(20, 3, 0.0, 2.0);
  Complex total = 0.0;
  for (const auto& w : flat.weights()) total += w;
  EXPECT_LE(std::abs(total - Complex(1.0)), 1e-12);
  for (double x : {0.0, 0.7, 1.9}) EXPECT_LE(std::abs(flat.chi(x) - Complex(1.0)), 1e-9);
}

TEST(SolveChi, FirstOrderPoissonForm) {
  const int n = 32;
  const double t = 1.0, a = 2.0;
  auto sol = ams::solve_chi(n, 1, t, a);
  for (double x : {0.0, 1.0}) {
    Complex want = std::exp(n * (a - x) * (ams::resampling_phase(n, 1, t) - 1.0));
    EXPECT_LE(std::abs(sol.chi(x) - want), 1e-10);
  }
}

TEST(SolveChi, MatchesSimulation) {
  const int n = 20, k = 3;
  const double a = 2.0, t = 1.0;
  const std::uint64_t runs = 100000;
  Complex analytic = ams::solve_chi(n, k, t, a).chi(0.0);

  ams::AmsParams params;
  params.n = n;
  params.k = k;
  params.a = a;
  params.master_seed = 77;
  ams::RngStream rng(77, 0);
  const auto dist = ams::DistributionModel::exponential();
  std::vector<double> logs(runs);
  for (auto& v : logs) v = std::log(ams::run_ams(params, dist, rng).estimate);
  Complex empirical = ams::empirical_char_function(logs, t * std::sqrt(static_cast<double>(n)));
  EXPECT_LE(std::abs(analytic - empirical), 5.0 / std::sqrt(static_cast<double>(runs)))
      << analytic << " vs " << empirical;
}

TEST(SolveChi, Errors) {
  EXPECT_EQ(kind_of([] { ams::solve_chi(65, 2, 1.0, 1.0); }), ErrorKind::Range);
  EXPECT_EQ(kind_of([] { ams::solve_chi(10, 9, 1.0, 1.0); }), ErrorKind::Range);
}

TEST(Phi, Basics) {
  auto sol = ams::solve_chi(32, 2, 1.0, 3.0);
  EXPECT_LE(std::abs(ams::evaluate_phi(sol, 3.0) - Complex(1.0)), 1e-12);
  auto flat = ams::solve_chi(32, 2, 0.0, 3.0);
  EXPECT_LE(std::abs(ams::evaluate_phi(flat, 0.0) - Complex(1.0)), 1e-9);
  EXPECT_EQ(kind_of([&] { ams::evaluate_phi(sol, -0.1); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([&] { ams::evaluate_phi(sol, 3.1); }), ErrorKind::Domain);
}

TEST(Phi, ApproachesGaussianLimit) {
  // phi(1, 0) -> exp(-a/2) as n grows.
  const double a = 2.0, want = std::exp(-a / 2.0);
  double previous = 1.0;
  for (int n : {8, 16, 32, 64}) {
    double err = std::abs(ams::evaluate_phi(ams::solve_chi(n, 2, 1.0, a), 0.0) - want);
    EXPECT_LT(err, previous) << n;
    previous = err;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(DensityIdentities, FiniteDifferences) {
  auto first = ams::derivative_identity_check(5, 1, 1.0, 0.2);
  EXPECT_TRUE(first.passed) << first.relative_error;
  auto higher = ams::derivative_identity_check(10, 4, 2.0, 0.0);
  EXPECT_TRUE(higher.passed) << higher.relative_error;
  EXPECT_LE(higher.relative_error, 1e-5);
  auto outside = ams::derivative_identity_check(10, 2, 0.5, 1.0);
  EXPECT_TRUE(outside.passed);
  EXPECT_EQ(outside.lhs, 0.0);
}

TEST(FunctionalEquation, ChiIsAFixedPoint) {
  auto sol = ams::solve_chi(16, 2, 1.0, 2.0);
  for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    EXPECT_LE(std::abs(ams::functional_equation_rhs(sol, x) - sol.chi(x)), 1e-6) << x;
  }
}

TEST(BoundaryDecay, ScaledDerivativesStayBounded) {
  const int grid[] = {16, 32, 64};
  auto rep = ams::boundary_derivative_decay(3, 1.0, grid);
  EXPECT_TRUE(rep.passed);
  ASSERT_EQ(rep.scaled.size(), 3u);
  ASSERT_EQ(rep.scaled[0].size(), 2u);
}

TEST(ChiModulus, NeverExceedsOne) {
  for (int n : {10, 40}) {
    for (double t : {0.5, 2.0}) {
      auto sol = ams::solve_chi(n, 3, t, 2.5);
      for (int i = 0; i <= 25; ++i) {
        EXPECT_LE(std::abs(sol.chi(0.1 * i)), 1.0 + 1e-9) << n << "," << t << "," << i;
      }
    }
  }
}

}  // namespace
