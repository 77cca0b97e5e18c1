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

#include "ams/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ams/error.hpp"
#include "ams/sampling.hpp"

namespace ams {

namespace {

constexpr int kMaxSweeps = 200;
constexpr double kRootResidualTolerance = 1e-10;
constexpr double kDistinctRootTolerance = 1e-8;
constexpr double kDualityTolerance = 1e-12;

double binomial(int n, int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
  return c;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// prod_j (1 - c_j w) - target and its derivative, with c_j = n / (n - j).
struct ScaledCharacteristic {
  std::vector<double> scales;
  Complex target;

  ScaledCharacteristic(int n, int k, double t) : target(resampling_phase(n, k, t)) {
    scales.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) scales.push_back(static_cast<double>(n) / (n - j));
  }

  Complex value(Complex w) const {
    Complex p = 1.0;
    for (double c : scales) p *= 1.0 - c * w;
    return p - target;
  }

  std::pair<Complex, Complex> value_and_slope(Complex w) const {
    Complex p = 1.0, dp = 0.0;
    for (double c : scales) {
      dp = dp * (1.0 - c * w) - c * p;
      p *= 1.0 - c * w;
    }
    return {p - target, dp};
  }
};

void check_root_range(int n, int k) {
  if (n < 3 || k < 1 || k > n - 2) {
    fail(ErrorKind::Range, "need n >= 3 and 1 <= k <= n-2, got n=" + std::to_string(n) +
                               ", k=" + std::to_string(k));
  }
}

}  // namespace

Complex resampling_phase(int n, int l, double t) {
  require(l >= 0 && l < n, ErrorKind::Domain, "resampling_phase: need 0 <= l < n");
  double angle = t * std::sqrt(static_cast<double>(n)) * std::log1p(-static_cast<double>(l) / n);
  return std::polar(1.0, angle);
}

// ---------------------------------------------------------------------------
// ODE coefficients

double OdeCoefficients::polynomial(double lambda) const {
  double value = 1.0;
  for (int m = k - 1; m >= 0; --m) value = value * lambda - r[static_cast<std::size_t>(m)];
  return value;
}

OdeCoefficients ode_coefficients_by_recursion(int n, int k) {
  require(k >= 1 && k <= n - 1, ErrorKind::Range, "ode coefficients: need 1 <= k <= n-1");
  // r holds r_{m,l} for m = 0..l with the bookkeeping entry r_{l,l} = -1.
  std::vector<double> r{-1.0};
  double mu = 1.0;
  for (int l = 0; l < k; ++l) {
    const double c = n - k + l + 1;
    std::vector<double> next(r.size() + 1, 0.0);
    for (std::size_t m = 0; m < next.size(); ++m) {
      double shifted = m >= 1 ? r[m - 1] : 0.0;
      double kept = m < r.size() ? r[m] : 0.0;
      next[m] = shifted - c * kept;
    }
    r = std::move(next);
    mu = -c * mu;
  }
  r.pop_back();
  return {n, k, mu, std::move(r)};
}

OdeCoefficients ode_coefficients_by_expansion(int n, int k) {
  require(k >= 1 && k <= n - 1, ErrorKind::Range, "ode coefficients: need 1 <= k <= n-1");
  // Ascending coefficients of prod_{j=0}^{k-1} (lambda - (n - j)), starting
  // from the (lambda - n) factor.
  std::vector<double> poly{1.0};
  double falling = 1.0;
  for (int j = 0; j < k; ++j) {
    const double root = n - j;
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t m = 0; m < poly.size(); ++m) {
      next[m + 1] += poly[m];
      next[m] -= root * poly[m];
    }
    poly = std::move(next);
    falling *= root;
  }
  OdeCoefficients out{n, k, (k % 2 ? -1.0 : 1.0) * falling, {}};
  out.r.resize(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) out.r[m] = -poly[m];
  return out;
}

double ode_coefficient_discrepancy(const OdeCoefficients& lhs, const OdeCoefficients& rhs) {
  require(lhs.k == rhs.k && lhs.r.size() == rhs.r.size(), ErrorKind::InvalidParams,
          "comparing coefficients of different order");
  auto rel = [](double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
  };
  double worst = rel(lhs.mu, rhs.mu);
  for (std::size_t m = 0; m < lhs.r.size(); ++m) worst = std::max(worst, rel(lhs.r[m], rhs.r[m]));
  return worst;
}

OdeCoefficients ode_coefficients(int n, int k) {
  if (k < 1 || k > n - 2) {
    fail(ErrorKind::Range, "ode_coefficients: need 1 <= k <= n-2");
  }
  OdeCoefficients recursion = ode_coefficients_by_recursion(n, k);
  OdeCoefficients expansion = ode_coefficients_by_expansion(n, k);
  double gap = ode_coefficient_discrepancy(recursion, expansion);
  if (gap > kDualityTolerance) {
    fail(ErrorKind::Internal,
         "ode_coefficients: recursion and expansion disagree by " + std::to_string(gap));
  }
  return recursion;
}

// ---------------------------------------------------------------------------
// Characteristic roots

double characteristic_residual(int n, int k, double t, Complex lambda) {
  ScaledCharacteristic f(n, k, t);
  return std::abs(f.value(lambda / static_cast<double>(n)));
}

std::vector<Complex> limit_roots(int n, int k, double t) {
  std::vector<Complex> seeds;
  seeds.reserve(static_cast<std::size_t>(k));
  seeds.emplace_back(0.5 * t * t, t * std::sqrt(static_cast<double>(n)));
  for (int l = 2; l <= k; ++l) {
    double angle = 2.0 * std::numbers::pi * (l - 1) / k;
    seeds.push_back(static_cast<double>(n) * (1.0 - std::polar(1.0, angle)));
  }
  return seeds;
}

std::vector<Complex> characteristic_roots(int n, int k, double t) {
  check_root_range(n, k);
  const double scale = n;
  ScaledCharacteristic f(n, k, t);
  std::vector<Complex> w = limit_roots(n, k, t);
  for (auto& v : w) v /= scale;

  // Aberth-Ehrlich sweeps, updating in place.
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double largest_step = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto [g, dg] = f.value_and_slope(w[i]);
      if (g == Complex(0.0) || dg == Complex(0.0)) continue;
      Complex newton = g / dg;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (j != i) repulsion += 1.0 / (w[i] - w[j]);
      }
      Complex step = newton / (1.0 - newton * repulsion);
      w[i] -= step;
      largest_step = std::max(largest_step, std::abs(step));
    }
    if (largest_step <= 1e-16) break;
  }

  std::vector<Complex> roots;
  roots.reserve(w.size());
  for (const auto& v : w) {
    double residual = std::abs(f.value(v));
    if (!(residual <= kRootResidualTolerance)) {
      fail(ErrorKind::ConvergenceFailure,
           "characteristic_roots: residual " + std::to_string(residual) + " at n=" +
               std::to_string(n) + ", k=" + std::to_string(k));
    }
    roots.push_back(v * scale);
  }
  return roots;
}

RootAsymptoticsReport asymptotic_root_check(int k, double t, std::span<const long> n_grid) {
  require(!n_grid.empty(), ErrorKind::InvalidParams, "asymptotic_root_check: empty grid");
  RootAsymptoticsReport report;
  report.k = k;
  report.t = t;
  long previous = 0;
  for (long n : n_grid) {
    require(n > previous && n >= k + 2, ErrorKind::InvalidParams,
            "asymptotic_root_check: grid must increase and satisfy n >= k+2");
    previous = n;
    auto roots = characteristic_roots(static_cast<int>(n), k, t);
    RootAsymptoticsRow row;
    row.n = n;
    const double root_n = std::sqrt(static_cast<double>(n));
    row.leading_error = std::abs(roots[0] - Complex(0.5 * t * t, t * root_n));
    for (int l = 2; l <= k; ++l) {
      Complex limit = 1.0 - std::polar(1.0, 2.0 * std::numbers::pi * (l - 1) / k);
      row.bulk_error = std::max(row.bulk_error,
                                std::abs(roots[l - 1] / static_cast<double>(n) - limit));
    }
    report.rows.push_back(row);
  }
  constexpr double converged = 1e-9;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& before = report.rows[i - 1];
    const auto& after = report.rows[i];
    if (before.leading_error > converged && !(after.leading_error < before.leading_error)) {
      report.leading_decreasing = false;
    }
    if (before.bulk_error > converged && !(after.bulk_error < before.bulk_error)) {
      report.bulk_decreasing = false;
    }
  }
  const auto& last = report.rows.back();
  const double bound = 10.0 / std::sqrt(static_cast<double>(last.n));
  report.leading_bounded = last.leading_error <= bound;
  report.bulk_bounded = last.bulk_error <= bound;
  return report;
}

// ---------------------------------------------------------------------------
// Theta

ThetaFunction::ThetaFunction(int n, int k, double t, double a) : n_(n), k_(k), t_(t), a_(a) {
  if (n > 64) fail(ErrorKind::Range, "ThetaFunction: exact polynomial form needs n <= 64");
  require(n >= 2 && k >= 1 && k <= n - 1, ErrorKind::Domain,
          "ThetaFunction: need 1 <= k <= n-1");
  phases_.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) phases_.push_back(resampling_phase(n, l, t));

  // P(S_(l) < a <= S_(l+1)) = C(n,l) (1-u)^l u^(n-l).
  coeffs_.assign(static_cast<std::size_t>(n) + 1, Complex(0.0));
  for (int l = 0; l < k; ++l) {
    Complex weight = phases_[l] * binomial(n, l);
    for (int i = 0; i <= l; ++i) {
      double sign = i % 2 ? -1.0 : 1.0;
      coeffs_[static_cast<std::size_t>(n - l + i)] += weight * (sign * binomial(l, i));
    }
  }
}

Complex ThetaFunction::operator()(double x) const {
  const double u = std::exp(x - a_);
  Complex value = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) value = value * u + *it;
  return value;
}

Complex ThetaFunction::derivative(int m, double x) const {
  require(m >= 0, ErrorKind::Domain, "derivative order must be non-negative");
  const double u = std::exp(x - a_);
  Complex value = 0.0;
  for (int j = n_; j >= 0; --j) {
    value = value * u + coeffs_[static_cast<std::size_t>(j)] * std::pow(static_cast<double>(j), m);
  }
  return value;
}

Complex ThetaFunction::derivative_at_threshold(int m) const {
  require(m >= 0, ErrorKind::Domain, "derivative order must be non-negative");
  const auto order = static_cast<std::size_t>(m) + 1;
  // Taylor coefficients of 1 - e^s.
  std::vector<double> base(order, 0.0);
  for (std::size_t q = 1; q < order; ++q) base[q] = -1.0 / factorial(static_cast<int>(q));

  std::vector<double> power(order, 0.0);
  power[0] = 1.0;
  Complex total = 0.0;
  for (int l = 0; l < k_; ++l) {
    if (l > 0) {
      std::vector<double> next(order, 0.0);
      for (std::size_t i = 0; i < order; ++i) {
        if (power[i] == 0.0) continue;
        for (std::size_t j = 1; i + j < order; ++j) next[i + j] += power[i] * base[j];
      }
      power = std::move(next);
    }
    // Coefficient of s^m in (1 - e^s)^l e^{(n-l)s}.
    double coefficient = 0.0;
    const double rate = n_ - l;
    for (int q = 0; q <= m; ++q) {
      coefficient += power[static_cast<std::size_t>(q)] * std::pow(rate, m - q) / factorial(m - q);
    }
    total += phases_[l] * (binomial(n_, l) * coefficient * factorial(m));
  }
  return total;
}

Complex ThetaFunction::direct(double x) const {
  Complex value = 0.0;
  for (int l = 0; l < k_; ++l) {
    double mass = order_statistic_cdf(n_, l, a_, x) - order_statistic_cdf(n_, l + 1, a_, x);
    value += phases_[l] * mass;
  }
  return value;
}

// ---------------------------------------------------------------------------
// chi and phi

CharacteristicSolution::CharacteristicSolution(int n, int k, double t, double a,
                                               std::vector<Complex> roots,
                                               std::vector<Complex> weights,
                                               std::vector<Complex> boundary)
    : n_(n), k_(k), t_(t), a_(a), roots_(std::move(roots)), weights_(std::move(weights)),
      boundary_(std::move(boundary)) {}

Complex CharacteristicSolution::chi(double x) const { return chi_derivative(0, x); }

Complex CharacteristicSolution::chi_derivative(int m, double x) const {
  Complex value = 0.0;
  for (std::size_t l = 0; l < roots_.size(); ++l) {
    value += weights_[l] * std::pow(roots_[l], m) * std::exp(roots_[l] * (x - a_));
  }
  return value;
}

CharacteristicSolution solve_chi(int n, int k, double t, double a) {
  if (n > 64) fail(ErrorKind::Range, "solve_chi: boundary data is exact only for n <= 64");
  check_root_range(n, k);
  std::vector<Complex> roots = characteristic_roots(n, k, t);

  const double scale = n;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (std::abs(roots[i] - roots[j]) / scale < kDistinctRootTolerance) {
        fail(ErrorKind::SingularSystem, "solve_chi: characteristic roots are not distinct");
      }
    }
  }

  ThetaFunction theta(n, k, t, a);
  std::vector<Complex> boundary;
  boundary.reserve(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) boundary.push_back(theta.derivative_at_threshold(m));

  Eigen::MatrixXcd system(k, k);
  Eigen::VectorXcd rhs(k);
  for (int m = 0; m < k; ++m) {
    for (int l = 0; l < k; ++l) system(m, l) = std::pow(roots[l] / scale, m);
    rhs(m) = boundary[m] / std::pow(scale, m);
  }
  Eigen::VectorXcd eta = system.partialPivLu().solve(rhs);
  std::vector<Complex> weights(eta.data(), eta.data() + k);
  return {n, k, t, a, std::move(roots), std::move(weights), std::move(boundary)};
}

Complex evaluate_phi(const CharacteristicSolution& sol, double x) {
  require(x >= 0.0 && x <= sol.a(), ErrorKind::Domain, "evaluate_phi: need 0 <= x <= a");
  double angle = -sol.t() * std::sqrt(static_cast<double>(sol.n())) * (x - sol.a());
  return std::polar(1.0, angle) * sol.chi(x);
}

Complex functional_equation_rhs(const CharacteristicSolution& sol, double x) {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  const int n = sol.n(), k = sol.k();
  ThetaFunction theta(n, k, sol.t(), sol.a());
  Complex integral = 0.0;
  if (x < sol.a()) {
    auto real_part = [&](double y) { return (sol.chi(y) * order_statistic_density(n, k, y, x)).real(); };
    auto imag_part = [&](double y) { return (sol.chi(y) * order_statistic_density(n, k, y, x)).imag(); };
    double re = Quadrature::integrate(real_part, x, sol.a(), 20, 1e-13);
    double im = Quadrature::integrate(imag_part, x, sol.a(), 20, 1e-13);
    integral = {re, im};
  }
  return resampling_phase(n, k, sol.t()) * integral + theta(x);
}

// ---------------------------------------------------------------------------
// Order-statistic density identities and boundary growth

DerivativeIdentityReport derivative_identity_check(int n, int k, double y, double x) {
  require(n >= 2 && k >= 1 && k <= n - 1, ErrorKind::Domain,
          "derivative_identity_check: need 1 <= k <= n-1");
  DerivativeIdentityReport report;
  if (y <= x) return report;
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  report.lhs = (order_statistic_density(n, k, y, x + h) - order_statistic_density(n, k, y, x - h)) /
               (2.0 * h);
  const double here = order_statistic_density(n, k, y, x);
  report.rhs = k == 1 ? n * here
                      : (n - k + 1) * (here - order_statistic_density(n, k - 1, y, x));
  double scale = std::max({std::abs(report.lhs), std::abs(report.rhs), 1e-300});
  report.relative_error = std::abs(report.lhs - report.rhs) / scale;
  report.passed = report.relative_error <= 1e-5;
  return report;
}

BoundaryDecayReport boundary_derivative_decay(int k, double t, std::span<const int> n_grid) {
  require(t != 0.0, ErrorKind::Domain, "boundary_derivative_decay: t must be non-zero");
  require(!n_grid.empty(), ErrorKind::InvalidParams, "boundary_derivative_decay: empty grid");
  BoundaryDecayReport report;
  report.k = k;
  report.t = t;
  report.n_grid.assign(n_grid.begin(), n_grid.end());
  for (int n : n_grid) {
    ThetaFunction theta(n, k, t, 0.0);
    std::vector<double> row;
    for (int m = 1; m < k; ++m) {
      double magnitude = std::abs(theta.derivative_at_threshold(m));
      row.push_back(magnitude / std::pow(static_cast<double>(n), m) *
                    std::sqrt(static_cast<double>(n)) / std::abs(t));
    }
    report.scaled.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < report.scaled.size(); ++i) {
    for (std::size_t m = 0; m < report.scaled[i].size(); ++m) {
      if (report.scaled[i][m] > report.scaled[0][m] * (1.0 + 1e-12)) report.passed = false;
    }
  }
  return report;
}

}  // namespace ams
