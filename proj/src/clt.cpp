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

#include "ams/clt.hpp"

#include <cmath>

#include "ams/error.hpp"
#include "ams/stats.hpp"

namespace ams {

double asymptotic_variance(double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::Domain, "asymptotic_variance: p must lie in (0,1)");
  return -p * p * std::log(p);
}

double two_sided_quantile(double alpha) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorKind::Domain, "alpha must lie in (0,1]");
  return normal_quantile(1.0 - 0.5 * alpha);
}

Interval confidence_interval(double p_hat, int n, double alpha) {
  require(p_hat > 0.0 && p_hat < 1.0, ErrorKind::Domain,
          "confidence_interval: p_hat must lie in (0,1)");
  require(n >= 1, ErrorKind::Domain, "confidence_interval: n must be positive");
  double half = two_sided_quantile(alpha) * std::sqrt(asymptotic_variance(p_hat)) /
                std::sqrt(static_cast<double>(n));
  return {p_hat - half, p_hat + half};
}

Interval confidence_interval_oracle(double center, double p, int n, double alpha) {
  require(n >= 1, ErrorKind::Domain, "confidence_interval: n must be positive");
  double half = two_sided_quantile(alpha) * std::sqrt(asymptotic_variance(p)) /
                std::sqrt(static_cast<double>(n));
  return {center - half, center + half};
}

CostComparison cost_comparison(double p, double epsilon, double alpha) {
  require(p > 0.0 && p < 1.0, ErrorKind::Domain, "cost_comparison: p must lie in (0,1)");
  require(epsilon > 0.0, ErrorKind::Domain, "cost_comparison: epsilon must be positive");
  double r = two_sided_quantile(alpha);
  double scale = r * r / (epsilon * epsilon);
  return {asymptotic_variance(p) * scale, p * (1.0 - p) * scale};
}

K1ExactLaw k1_exact_law(int n, double a) {
  require(a > 0.0, ErrorKind::Domain, "k1_exact_law: a must be positive");
  require(n >= 2, ErrorKind::Domain, "k1_exact_law: n must be at least 2");
  K1ExactLaw law;
  law.poisson_mean = n * a;
  // Poisson generating function E[s^J] = exp(n a (s - 1)) at s = 1 - 1/n and
  // s = (1 - 1/n)^2, simplified by hand.
  law.mean_phat = std::exp(-a);
  law.var_phat = std::exp(-2.0 * a) * std::expm1(a / n);
  return law;
}

}  // namespace ams
