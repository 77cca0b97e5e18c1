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

#include "ams/sampling.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "ams/error.hpp"
#include "format.hpp"

namespace ams {

namespace {

constexpr double kTailFloor = 1e-300;
constexpr int kMaxRedraws = 64;

std::string family_label(std::string_view name, std::initializer_list<double> args) {
  std::string out(name);
  out += '(';
  bool first = true;
  for (double v : args) {
    if (!first) out += ',';
    out += detail::shortest(v);
    first = false;
  }
  out += ')';
  return out;
}

std::vector<double> parse_arguments(std::string_view body, std::string_view text) {
  std::vector<double> args;
  while (!body.empty()) {
    auto comma = body.find(',');
    auto token = body.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      fail(ErrorKind::Parse, "bad distribution argument in '" + std::string(text) + "'");
    }
    args.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return args;
}

}  // namespace

DistributionModel DistributionModel::exponential(double rate) {
  require(rate > 0.0 && std::isfinite(rate), ErrorKind::InvalidParams,
          "exponential rate must be positive");
  return {Family::Exponential, {rate, 0.0}, family_label("exponential", {rate})};
}

DistributionModel DistributionModel::uniform(double lo, double hi) {
  require(lo < hi && std::isfinite(lo) && std::isfinite(hi), ErrorKind::InvalidParams,
          "uniform bounds must satisfy lo < hi");
  return {Family::Uniform, {lo, hi}, family_label("uniform", {lo, hi})};
}

DistributionModel DistributionModel::weibull(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, ErrorKind::InvalidParams,
          "weibull shape and scale must be positive");
  return {Family::Weibull, {shape, scale}, family_label("weibull", {shape, scale})};
}

DistributionModel DistributionModel::pareto(double scale, double alpha) {
  require(scale > 0.0 && alpha > 0.0, ErrorKind::InvalidParams,
          "pareto scale and index must be positive");
  return {Family::Pareto, {scale, alpha}, family_label("pareto", {scale, alpha})};
}

DistributionModel DistributionModel::custom(std::string label, Function cdf,
                                            Function inverse_cdf) {
  require(static_cast<bool>(cdf) && static_cast<bool>(inverse_cdf),
          ErrorKind::InvalidParams, "custom distribution needs cdf and inverse cdf");
  DistributionModel d(Family::Custom, {}, std::move(label));
  d.custom_cdf_ = std::move(cdf);
  d.custom_inverse_ = std::move(inverse_cdf);
  return d;
}

DistributionModel DistributionModel::parse(std::string_view text) {
  auto open = text.find('(');
  std::string_view name = text.substr(0, open);
  std::vector<double> args;
  if (open != std::string_view::npos) {
    if (text.back() != ')') {
      fail(ErrorKind::Parse, "unterminated distribution '" + std::string(text) + "'");
    }
    args = parse_arguments(text.substr(open + 1, text.size() - open - 2), text);
  }
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      fail(ErrorKind::Parse, "wrong number of arguments in '" + std::string(text) + "'");
    }
  };
  try {
    if (name == "exponential") {
      want(0, 1);
      return exponential(args.empty() ? 1.0 : args[0]);
    }
    if (name == "uniform") {
      want(0, 2);
      if (args.size() == 1) fail(ErrorKind::Parse, "uniform needs zero or two arguments");
      return args.empty() ? uniform() : uniform(args[0], args[1]);
    }
    if (name == "weibull") {
      want(1, 2);
      return weibull(args[0], args.size() > 1 ? args[1] : 1.0);
    }
    if (name == "pareto") {
      want(2, 2);
      return pareto(args[0], args[1]);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidParams) fail(ErrorKind::Parse, e.what());
    throw;
  }
  fail(ErrorKind::Parse, "unknown distribution '" + std::string(text) + "'");
}

double DistributionModel::cdf(double x) const {
  switch (family_) {
    case Family::Exponential:
      return x > 0.0 ? -std::expm1(-params_[0] * x) : 0.0;
    case Family::Uniform:
      if (x <= params_[0]) return 0.0;
      if (x >= params_[1]) return 1.0;
      return (x - params_[0]) / (params_[1] - params_[0]);
    case Family::Weibull:
      return x > 0.0 ? -std::expm1(-std::pow(x / params_[1], params_[0])) : 0.0;
    case Family::Pareto:
      return x > params_[0] ? -std::expm1(params_[1] * std::log(params_[0] / x)) : 0.0;
    case Family::Custom:
      return custom_cdf_(x);
  }
  return 0.0;
}

double DistributionModel::survival(double x) const {
  switch (family_) {
    case Family::Exponential:
      return x > 0.0 ? std::exp(-params_[0] * x) : 1.0;
    case Family::Uniform:
      if (x <= params_[0]) return 1.0;
      if (x >= params_[1]) return 0.0;
      return (params_[1] - x) / (params_[1] - params_[0]);
    case Family::Weibull:
      return x > 0.0 ? std::exp(-std::pow(x / params_[1], params_[0])) : 1.0;
    case Family::Pareto:
      return x > params_[0] ? std::pow(params_[0] / x, params_[1]) : 1.0;
    case Family::Custom:
      return 1.0 - custom_cdf_(x);
  }
  return 1.0;
}

double DistributionModel::inverse_cdf(double u) const {
  require(u > 0.0 && u < 1.0, ErrorKind::Domain, "inverse_cdf argument must lie in (0,1)");
  switch (family_) {
    case Family::Exponential:
      return -std::log1p(-u) / params_[0];
    case Family::Uniform:
      return params_[0] + u * (params_[1] - params_[0]);
    case Family::Weibull:
      return params_[1] * std::pow(-std::log1p(-u), 1.0 / params_[0]);
    case Family::Pareto:
      return params_[0] * std::exp(-std::log1p(-u) / params_[1]);
    case Family::Custom:
      return custom_inverse_(u);
  }
  return 0.0;
}

double lambda_transform(const DistributionModel& dist, double x) {
  double tail = dist.survival(x);
  if (!(tail > kTailFloor)) {
    fail(ErrorKind::Domain, "lambda_transform: 1 - F(x) is below the representable tail");
  }
  if (dist.family() == DistributionModel::Family::Exponential) {
    return x > 0.0 ? dist.parameters()[0] * x : 0.0;
  }
  return -std::log(tail);
}

double sample_conditional(const DistributionModel& dist, double level, RngStream& rng) {
  if (dist.family() == DistributionModel::Family::Exponential) {
    require(std::isfinite(level), ErrorKind::Domain, "sample_conditional: level is not finite");
    // Memoryless: L(X | X > level) = max(level, 0) + Exp(rate).
    double base = level > 0.0 ? level : 0.0;
    double value = base + rng.exponential() / dist.parameters()[0];
    if (value > level) return value;
  }
  double tail = dist.survival(level);
  if (!(tail > kTailFloor)) {
    fail(ErrorKind::Domain, "sample_conditional: level lies beyond the representable tail");
  }
  double below = dist.cdf(level);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    double u = below + rng.uniform() * tail;
    if (!(u < 1.0)) continue;
    double value = dist.inverse_cdf(u);
    if (value > level) return value;
  }
  fail(ErrorKind::Domain, "sample_conditional: could not draw strictly above the level");
}

double log_binomial(int n, int j) {
  return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

double order_statistic_cdf(int n, int l, double y, double x) {
  require(n >= 1 && l >= 0 && l <= n, ErrorKind::Domain,
          "order_statistic_cdf: need 0 <= l <= n and n >= 1");
  if (l == 0) return x <= y ? 1.0 : 0.0;
  if (y <= x) return 0.0;
  double z = y - x;
  double below = -std::expm1(-z);
  if (below >= 1.0) return 1.0;
  double log_below = std::log(below);
  double log_above = -z;
  double sum = 0.0;
  for (int j = l; j <= n; ++j) {
    sum += std::exp(log_binomial(n, j) + j * log_below + (n - j) * log_above);
  }
  return sum > 1.0 ? 1.0 : sum;
}

double order_statistic_density(int n, int l, double y, double x) {
  require(n >= 1 && l >= 1 && l <= n, ErrorKind::Domain,
          "order_statistic_density: need 1 <= l <= n");
  if (y <= x) return 0.0;
  double z = y - x;
  double log_density = std::log(static_cast<double>(l)) + log_binomial(n, l) -
                       (n - l + 1) * z;
  if (l > 1) log_density += (l - 1) * std::log(-std::expm1(-z));
  return std::exp(log_density);
}

}  // namespace ams
