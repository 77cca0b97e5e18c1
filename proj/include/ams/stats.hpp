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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ams {

/// Standard normal CDF.
double normal_cdf(double z);

/// Inverse of normal_cdf on (0,1): rational approximation plus one Halley
/// refinement step. Throws ErrorKind::Domain outside (0,1).
double normal_quantile(double q);

/// Pairwise summation; the result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (M - 1 denominator)
  double skewness = 0.0;  // moment coefficient g1
  double std_error = 0.0; // sqrt(variance / M)
};

/// Sums run over the sorted sample, so the result does not depend on the
/// input order.
Moments moments(std::span<const double> values);

/// Type-7 (linear interpolation) quantile of an ascending sample.
double quantile_sorted(std::span<const double> sorted, double q);

/// Estimates normalized as sqrt(n)(p_hat - p) / sqrt(-p^2 log p), which is
/// asymptotically N(0,1).
struct NormalizedSample {
  std::vector<double> values;
  int n = 0;
  int k = 0;
  double a = 0.0;
  double p = 0.0;

  /// Throws ErrorKind::InvalidParams unless p in (0,1), M >= 2 and every
  /// normalized value is finite.
  static NormalizedSample from_estimates(std::span<const double> estimates, int n, int k,
                                         double a, double p);
};

/// sup_z |F_M(z) - Phi(z)|. Requires M >= 10.
double ks_statistic(std::span<const double> sample);
double ks_statistic(const NormalizedSample& sample);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

struct TwoSampleKs {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test; ties are handled by advancing both
/// empirical CDFs past equal values.
TwoSampleKs ks_two_sample(std::span<const double> first, std::span<const double> second);

struct Histogram {
  std::vector<double> edges;         // bins + 1 ascending edges
  std::vector<std::size_t> counts;   // sums to the sample size
};

/// Freedman-Diaconis binning unless `bins` is given.
Histogram histogram(std::span<const double> sample, std::optional<int> bins = std::nullopt);

/// Pairs (Phi^{-1}((i - 0.5)/points), empirical type-7 quantile at the same
/// probability) for i = 1..points.
std::vector<std::pair<double, double>> qq_data(std::span<const double> sample, int points);
std::vector<std::pair<double, double>> qq_data(const NormalizedSample& sample, int points);

/// (1/M) sum_m exp(i t v_m), with v_m = sqrt(n)(log p_hat_m - log p).
std::complex<double> empirical_char_function(std::span<const double> log_ratios, double t);

}  // namespace ams
