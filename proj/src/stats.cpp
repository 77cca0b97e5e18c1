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

#include "ams/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ams/error.hpp"

namespace ams {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double q) {
  require(q > 0.0 && q < 1.0, ErrorKind::Domain, "normal_quantile: q must lie in (0,1)");
  // Acklam's rational approximation, relative error ~1e-9 before refinement.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (q < low || q > 1.0 - low) {
    double r = std::sqrt(-2.0 * std::log(q < low ? q : 1.0 - q));
    x = (((((c[0] * r + c[1]) * r + c[2]) * r + c[3]) * r + c[4]) * r + c[5]) /
        ((((d[0] * r + d[1]) * r + d[2]) * r + d[3]) * r + 1.0);
    if (q > 1.0 - low) x = -x;
  } else {
    double s = q - 0.5;
    double r = s * s;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * s /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley step on Phi(x) - q.
  double e = normal_cdf(x) - q;
  double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Moments moments(std::span<const double> values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  // Summing in sorted order makes the result independent of input order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  m.mean = pairwise_sum(sorted) / count;
  std::vector<double> sq(sorted.size()), cube(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double d = sorted[i] - m.mean;
    sq[i] = d * d;
    cube[i] = d * d * d;
  }
  double ss = pairwise_sum(sq);
  if (sorted.size() > 1) {
    m.variance = ss / (count - 1.0);
    m.std_error = std::sqrt(m.variance / count);
  }
  double biased = ss / count;
  if (biased > 0.0) m.skewness = pairwise_sum(cube) / count / std::pow(biased, 1.5);
  return m;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  require(!sorted.empty(), ErrorKind::InvalidParams, "quantile of an empty sample");
  require(q >= 0.0 && q <= 1.0, ErrorKind::Domain, "quantile level must lie in [0,1]");
  double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

NormalizedSample NormalizedSample::from_estimates(std::span<const double> estimates, int n,
                                                  int k, double a, double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::InvalidParams,
          "normalization needs a reference probability in (0,1)");
  require(estimates.size() >= 2, ErrorKind::InvalidParams, "normalization needs M >= 2");
  NormalizedSample out;
  out.n = n;
  out.k = k;
  out.a = a;
  out.p = p;
  const double scale = std::sqrt(static_cast<double>(n)) / std::sqrt(-p * p * std::log(p));
  out.values.reserve(estimates.size());
  for (double e : estimates) {
    double v = (e - p) * scale;
    require(std::isfinite(v), ErrorKind::InvalidParams, "non-finite normalized value");
    out.values.push_back(v);
  }
  return out;
}

double ks_statistic(std::span<const double> sample) {
  require(sample.size() >= 10, ErrorKind::InvalidParams, "ks_statistic needs M >= 10");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double cdf = normal_cdf(sorted[i]);
    d = std::max({d, (i + 1) / count - cdf, cdf - i / count});
  }
  return d;
}

double ks_statistic(const NormalizedSample& sample) { return ks_statistic(sample.values); }

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form, fast for small lambda.
    double s = 0.0;
    const double factor = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    for (int j = 1; j <= 50; ++j) {
      double odd = 2.0 * j - 1.0;
      s += std::exp(-odd * odd * factor);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = std::exp(-2.0 * j * j * lambda * lambda);
    s += (j % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

TwoSampleKs ks_two_sample(std::span<const double> first, std::span<const double> second) {
  require(!first.empty() && !second.empty(), ErrorKind::InvalidParams,
          "ks_two_sample needs two non-empty samples");
  std::vector<double> x(first.begin(), first.end()), y(second.begin(), second.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  TwoSampleKs out;
  out.statistic = d;
  const double ne = std::sqrt(nx * ny / (nx + ny));
  out.p_value = kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d);
  return out;
}

Histogram histogram(std::span<const double> sample, std::optional<int> bins) {
  require(!sample.empty(), ErrorKind::InvalidParams, "histogram of an empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  int count = 1;
  if (bins) {
    require(*bins >= 1, ErrorKind::InvalidParams, "histogram needs at least one bin");
    count = *bins;
  } else if (hi > lo) {
    double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    double width = 2.0 * iqr * std::cbrt(1.0 / static_cast<double>(sorted.size()));
    count = width > 0.0 ? static_cast<int>(std::ceil((hi - lo) / width)) : 1;
    count = std::clamp(count, 1, 10000);
  }
  Histogram h;
  double span = hi > lo ? hi - lo : 1.0;
  double start = hi > lo ? lo : lo - 0.5;
  h.edges.resize(static_cast<std::size_t>(count) + 1);
  for (int b = 0; b <= count; ++b) h.edges[b] = start + span * b / count;
  h.counts.assign(static_cast<std::size_t>(count), 0);
  for (double v : sorted) {
    auto b = static_cast<long>(std::floor((v - start) / span * count));
    h.counts[static_cast<std::size_t>(std::clamp(b, 0L, static_cast<long>(count) - 1))] += 1;
  }
  return h;
}

std::vector<std::pair<double, double>> qq_data(std::span<const double> sample, int points) {
  require(points >= 1 && static_cast<std::size_t>(points) <= sample.size(),
          ErrorKind::InvalidParams, "qq_data needs 1 <= points <= M");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) {
    double prob = (i - 0.5) / points;
    out.emplace_back(normal_quantile(prob), quantile_sorted(sorted, prob));
  }
  return out;
}

std::vector<std::pair<double, double>> qq_data(const NormalizedSample& sample, int points) {
  return qq_data(sample.values, points);
}

std::complex<double> empirical_char_function(std::span<const double> log_ratios, double t) {
  require(!log_ratios.empty(), ErrorKind::InvalidParams, "empty sample");
  std::vector<double> sorted(log_ratios.begin(), log_ratios.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> re(sorted.size()), im(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double arg = t * sorted[i];
    re[i] = std::cos(arg);
    im[i] = std::sin(arg);
  }
  const double count = static_cast<double>(sorted.size());
  return {pairwise_sum(re) / count, pairwise_sum(im) / count};
}

}  // namespace ams
