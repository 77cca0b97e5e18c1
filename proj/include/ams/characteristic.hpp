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

// Analytic reconstruction of the characteristic function of the AMS
// log-estimator in the exponential case.
//
// For fixed (n, k, t) let
//   chi(t, x) = E[exp(i t sqrt(n) log p_hat(x))],
//   phi(t, x) = exp(-i t sqrt(n) (x - a)) chi(t, x).
// chi solves a functional equation in x which reduces to a constant
// coefficient linear ODE of order k. Its solution is a sum of k exponentials
// exp(lambda_l (x - a)) whose rates are the roots of
//   (n - lambda) ... (n - k + 1 - lambda) / (n ... (n - k + 1)) = e_k(t),
//   e_l(t) = exp(i t sqrt(n) log(1 - l/n)),
// and whose weights follow from the derivatives of chi at x = a.

#include <complex>
#include <span>
#include <vector>

namespace ams {

using Complex = std::complex<double>;

/// exp(i t sqrt(n) log(1 - l/n)), the phase picked up by l killed replicas.
Complex resampling_phase(int n, int l, double t);

/// Coefficients of the order-k ODE
///   chi^{(k)} = e_k(t) mu chi + sum_m r[m] chi^{(m)}.
struct OdeCoefficients {
  int n = 0;
  int k = 0;
  double mu = 0.0;
  std::vector<double> r;  // r[m], m = 0..k-1

  /// lambda^k - sum_m r[m] lambda^m.
  double polynomial(double lambda) const;
};

/// Double recursion on (mu_l, r_{m,l}) obtained by differentiating the
/// functional equation l times.
OdeCoefficients ode_coefficients_by_recursion(int n, int k);

/// Expansion of (lambda - n)(lambda - n + 1)...(lambda - n + k - 1), with
/// mu = (-1)^k n (n-1) ... (n-k+1).
OdeCoefficients ode_coefficients_by_expansion(int n, int k);

/// Largest relative coefficientwise difference (mu and every r[m]).
double ode_coefficient_discrepancy(const OdeCoefficients& lhs, const OdeCoefficients& rhs);

/// Both routes, cross-checked to 1e-12 relative. Requires 1 <= k <= n-2
/// (ErrorKind::Range otherwise).
OdeCoefficients ode_coefficients(int n, int k);

/// |prod_j (1 - lambda/(n-j)) - e_k(t)|.
double characteristic_residual(int n, int k, double t, Complex lambda);

/// Starting points: i t sqrt(n) + t^2/2 for the first root,
/// n (1 - exp(2 pi i (l-1)/k)) for l >= 2.
std::vector<Complex> limit_roots(int n, int k, double t);

/// All k roots by Aberth iteration from limit_roots(); entry l is the root
/// attached to the l-th starting point. Residual <= 1e-10 for every root or
/// ErrorKind::ConvergenceFailure after 200 sweeps. Requires n >= 3,
/// 1 <= k <= n-2.
std::vector<Complex> characteristic_roots(int n, int k, double t);

struct RootAsymptoticsRow {
  long n = 0;
  double leading_error = 0.0;  // |lambda_1 - i t sqrt(n) - t^2/2|
  double bulk_error = 0.0;     // max_{l>=2} |lambda_l / n - (1 - exp(2 pi i (l-1)/k))|
};

struct RootAsymptoticsReport {
  int k = 0;
  double t = 0.0;
  std::vector<RootAsymptoticsRow> rows;
  bool leading_decreasing = true;
  bool bulk_decreasing = true;
  bool leading_bounded = true;  // last leading_error <= 10 / sqrt(n_last)
  bool bulk_bounded = true;     // last bulk_error <= 10 / sqrt(n_last)

  bool passed() const {
    return leading_decreasing && bulk_decreasing && leading_bounded && bulk_bounded;
  }
};

/// Root asymptotics along an increasing grid of n (each n >= k + 2).
/// Errors below 1e-9 count as converged for the monotonicity test.
RootAsymptoticsReport asymptotic_root_check(int k, double t, std::span<const long> n_grid);

/// Theta(t, x) = sum_{l<k} e_l(t) P(S_(l) < a <= S_(l+1)), the contribution of
/// runs that stop before the first resampling, as a polynomial in
/// u = exp(-(a - x)). Only offered for n <= 64.
class ThetaFunction {
 public:
  /// ErrorKind::Range if n > 64, ErrorKind::Domain unless 1 <= k <= n-1.
  ThetaFunction(int n, int k, double t, double a);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  double t() const noexcept { return t_; }
  double a() const noexcept { return a_; }

  /// Coefficient j multiplies u^j; only j in [n-k+1, n] are non-zero.
  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }

  /// Horner evaluation of the polynomial.
  Complex operator()(double x) const;

  /// d^m/dx^m through d/dx = u d/du applied to the polynomial.
  Complex derivative(int m, double x) const;

  /// d^m/dx^m at x = a from Taylor series of (1 - e^s)^l e^{(n-l)s}; every
  /// term has a fixed sign, so no cancellation occurs.
  Complex derivative_at_threshold(int m) const;

  /// The defining sum evaluated through order_statistic_cdf.
  Complex direct(double x) const;

 private:
  int n_;
  int k_;
  double t_;
  double a_;
  std::vector<Complex> phases_;  // e_l(t), l = 0..k-1
  std::vector<Complex> coeffs_;
};

/// chi(t, x) = sum_l eta_l exp(lambda_l (x - a)).
class CharacteristicSolution {
 public:
  CharacteristicSolution(int n, int k, double t, double a, std::vector<Complex> roots,
                         std::vector<Complex> weights, std::vector<Complex> boundary);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  double t() const noexcept { return t_; }
  double a() const noexcept { return a_; }
  const std::vector<Complex>& roots() const noexcept { return roots_; }
  const std::vector<Complex>& weights() const noexcept { return weights_; }
  /// d^m chi / dx^m at x = a, m = 0..k-1, used as boundary data.
  const std::vector<Complex>& boundary_derivatives() const noexcept { return boundary_; }

  Complex chi(double x) const;
  Complex chi_derivative(int m, double x) const;

 private:
  int n_;
  int k_;
  double t_;
  double a_;
  std::vector<Complex> roots_;
  std::vector<Complex> weights_;
  std::vector<Complex> boundary_;
};

/// Roots from characteristic_roots(), boundary derivatives from
/// ThetaFunction::derivative_at_threshold(), weights from the scaled
/// Vandermonde system sum_l eta_l (lambda_l/n)^m = chi^{(m)}(a) / n^m.
/// Requires 3 <= n <= 64, 1 <= k <= n-2. ErrorKind::SingularSystem if two
/// scaled roots lie within 1e-8 of each other.
CharacteristicSolution solve_chi(int n, int k, double t, double a);

/// exp(-i t sqrt(n) (x - a)) chi(t, x). Requires 0 <= x <= a.
Complex evaluate_phi(const CharacteristicSolution& sol, double x);

/// Right-hand side of the functional equation at x:
///   e_k(t) int_x^a chi(t,y) f_{n,k}(y;x) dy + Theta(t,x),
/// integrated by adaptive Gauss-Kronrod quadrature.
Complex functional_equation_rhs(const CharacteristicSolution& sol, double x);

struct DerivativeIdentityReport {
  double lhs = 0.0;  // central finite difference in x
  double rhs = 0.0;  // closed form
  double relative_error = 0.0;
  bool passed = true;
};

/// d/dx f_{n,1}(y;x) = n f_{n,1}(y;x) and, for k >= 2,
/// d/dx f_{n,k}(y;x) = (n-k+1)(f_{n,k}(y;x) - f_{n,k-1}(y;x)).
/// Passes at 1e-5 relative.
DerivativeIdentityReport derivative_identity_check(int n, int k, double y, double x);

struct BoundaryDecayReport {
  int k = 0;
  double t = 0.0;
  std::vector<int> n_grid;
  /// scaled[i][m-1] = |chi^{(m)}(a)| / n^m * sqrt(n) / |t| at n_grid[i].
  std::vector<std::vector<double>> scaled;
  bool passed = true;  // scaled values never exceed those at n_grid[0]
};

/// Growth of the boundary derivatives against n^m / sqrt(n).
BoundaryDecayReport boundary_derivative_decay(int k, double t, std::span<const int> n_grid);

}  // namespace ams
