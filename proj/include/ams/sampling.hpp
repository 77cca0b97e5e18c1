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

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "ams/rng.hpp"

namespace ams {

/// A continuous law on the real line, described by its CDF and inverse CDF.
///
/// Built-in families carry closed forms for the survival function so that
/// tail quantities such as -log(1 - F(x)) keep full relative precision.
/// Instances are immutable and safe to share between threads.
class DistributionModel {
 public:
  enum class Family { Exponential, Uniform, Weibull, Pareto, Custom };
  using Function = std::function<double(double)>;

  static DistributionModel exponential(double rate = 1.0);
  static DistributionModel uniform(double lo = 0.0, double hi = 1.0);
  static DistributionModel weibull(double shape, double scale = 1.0);
  static DistributionModel pareto(double scale, double alpha);
  static DistributionModel custom(std::string label, Function cdf,
                                  Function inverse_cdf);

  /// Parses "exponential", "exponential(2)", "uniform(0,1)", "weibull(1.5,2)"
  /// or "pareto(1,3)". Throws ErrorKind::Parse on anything else.
  static DistributionModel parse(std::string_view text);

  double cdf(double x) const;
  double survival(double x) const;
  double inverse_cdf(double u) const;

  Family family() const noexcept { return family_; }
  const std::string& label() const noexcept { return label_; }
  const std::array<double, 2>& parameters() const noexcept { return params_; }

 private:
  DistributionModel(Family family, std::array<double, 2> params,
                    std::string label)
      : family_(family), params_(params), label_(std::move(label)) {}

  Family family_;
  std::array<double, 2> params_{};
  std::string label_;
  Function custom_cdf_;
  Function custom_inverse_;
};

/// Lambda(x) = -log(1 - F(x)); maps X onto an Exp(1) variable.
/// Throws ErrorKind::Domain when 1 - F(x) <= 1e-300.
double lambda_transform(const DistributionModel& dist, double x);

/// One draw from L(X | X > level).
///
/// Exponential models use the memoryless shortcut level + E/rate. Every other
/// model uses inverse_cdf(F(level) + U (1 - F(level))); this generic route is
/// not part of the idealized exponential analysis and exists so that the
/// Lambda reduction can be exercised end to end.
double sample_conditional(const DistributionModel& dist, double level,
                          RngStream& rng);

/// log C(n, j).
double log_binomial(int n, int j);

/// CDF at y of the l-th order statistic of n iid draws from x + Exp(1):
/// sum_{j=l}^{n} C(n,j) F(y-x)^j (1-F(y-x))^{n-j}.
/// l = 0 denotes the starting level itself, so the result is 1 when x <= y.
double order_statistic_cdf(int n, int l, double y, double x);

/// Density at y of the same order statistic,
/// l C(n,l) F^{l-1} f (1-F)^{n-l} evaluated at y - x. Zero for y <= x.
double order_statistic_density(int n, int l, double y, double x);

}  // namespace ams
