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

namespace ams {

/// Limit variance of sqrt(n)(p_hat - p): -p^2 log(p). Same for every k.
double asymptotic_variance(double p);

/// r_alpha with P(|Z| <= r_alpha) = 1 - alpha for standard normal Z.
double two_sided_quantile(double alpha);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double half_width() const { return 0.5 * (upper - lower); }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Plug-in interval p_hat -/+ r_alpha sqrt(-p_hat^2 log p_hat) / sqrt(n).
/// alpha = 1 yields a zero-width interval.
Interval confidence_interval(double p_hat, int n, double alpha);

/// The same interval with the width evaluated at the true probability p,
/// centred on `center`.
Interval confidence_interval_oracle(double center, double p, int n, double alpha);

struct CostComparison {
  double n_ams = 0.0;  // -p^2 log(p) r^2 / eps^2
  double n_mc = 0.0;   // p (1 - p) r^2 / eps^2
};

/// Replica counts that reach |p_hat - p| <= epsilon at level 1 - alpha.
CostComparison cost_comparison(double p, double epsilon, double alpha);

/// Exact law of the k = 1 estimator in the exponential case with x = 0:
/// J ~ Poisson(n a), corrector 1, p_hat = (1 - 1/n)^J.
struct K1ExactLaw {
  double poisson_mean = 0.0;  // n a
  double mean_phat = 0.0;     // exp(-a)
  double var_phat = 0.0;      // exp(-2a) (exp(a/n) - 1)
};

K1ExactLaw k1_exact_law(int n, double a);

}  // namespace ams
