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

#include "ams/splitting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ams/ensemble.hpp"
#include "ams/error.hpp"

namespace ams {

namespace {

template <class Draw>
AmsResult iterate(ReplicaEnsemble& ensemble, const AmsParams& params,
                  std::uint64_t max_iterations, Draw&& draw) {
  const int n = params.n;
  const int k = params.k;
  AmsResult result;
  result.n = n;
  result.k = k;
  result.master_seed = params.master_seed;
  result.stream_index = params.stream_index;

  std::vector<double> killed(static_cast<std::size_t>(k - 1));
  double previous = params.x;
  for (std::uint64_t j = 0;; ++j) {
    for (auto& v : killed) v = ensemble.pop_min();
    const double level = ensemble.min();  // k-th order statistic
    if (params.record_levels) result.levels.push_back(level);

    if (level >= params.a) {
      int below = 0;
      for (double v : killed) below += v < params.a ? 1 : 0;
      result.iterations = j;
      result.survivors = n - below;
      result.corrector = static_cast<double>(result.survivors) / n;
      result.estimate = estimator_value(n, k, result.survivors, j);
      return result;
    }
    if (!(level > previous)) {
      fail(ErrorKind::IterationCapExceeded,
           "levels stopped increasing at iteration " + std::to_string(j) +
               " (degenerate or non-continuous input)");
    }
    if (j >= max_iterations) {
      fail(ErrorKind::IterationCapExceeded,
           "iteration cap " + std::to_string(max_iterations) + " reached");
    }
    previous = level;
    ensemble.replace_min(draw(level));
    for (int i = 1; i < k; ++i) ensemble.push(draw(level));
  }
}

AmsResult trivial_result(const AmsParams& params) {
  AmsResult result;
  result.n = params.n;
  result.k = params.k;
  result.survivors = params.n;
  result.master_seed = params.master_seed;
  result.stream_index = params.stream_index;
  return result;
}

}  // namespace

void AmsParams::validate() const {
  require(n >= 2, ErrorKind::InvalidParams, "n must be at least 2");
  require(k >= 1 && k <= n - 1, ErrorKind::InvalidParams, "k must satisfy 1 <= k <= n-1");
  require(std::isfinite(a) && std::isfinite(x), ErrorKind::InvalidParams,
          "levels a and x must be finite");
}

double estimator_value(int n, int k, int survivors, std::uint64_t iterations) {
  const double survive_fraction = static_cast<double>(n - k) / n;
  return static_cast<double>(survivors) / n *
         std::pow(survive_fraction, static_cast<double>(iterations));
}

std::uint64_t default_max_iterations(const AmsParams& params, const DistributionModel& dist) {
  double span = std::max(params.a - params.x, 1.0);
  try {
    span = std::max(span, lambda_transform(dist, params.a) - lambda_transform(dist, params.x));
  } catch (const Error&) {
    // Threshold beyond the representable tail: the run will report it.
  }
  return static_cast<std::uint64_t>(std::ceil(20.0 * params.n * span / params.k)) + 100;
}

AmsResult run_ams(const AmsParams& params, const DistributionModel& dist) {
  RngStream rng(params.master_seed, params.stream_index);
  return run_ams(params, dist, rng);
}

AmsResult run_ams(const AmsParams& params, const DistributionModel& dist, RngStream& rng) {
  params.validate();
  if (params.x >= params.a) return trivial_result(params);

  std::vector<double> initial(static_cast<std::size_t>(params.n));
  for (auto& v : initial) v = sample_conditional(dist, params.x, rng);
  ReplicaEnsemble ensemble(initial);
  const std::uint64_t cap =
      params.max_iterations ? params.max_iterations : default_max_iterations(params, dist);
  AmsResult result = iterate(ensemble, params, cap, [&](double level) {
    return sample_conditional(dist, level, rng);
  });
  result.master_seed = rng.master_seed();
  result.stream_index = rng.stream_index();
  return result;
}

AmsResult run_ams_from_sample(std::span<const double> initial, const AmsParams& params,
                              std::uint64_t max_iterations,
                              const ConditionalSampler& draw_above) {
  params.validate();
  require(initial.size() == static_cast<std::size_t>(params.n), ErrorKind::InvalidParams,
          "initial sample must hold exactly n values");
  if (params.x >= params.a) return trivial_result(params);
  for (double v : initial) {
    require(v > params.x, ErrorKind::InvalidParams, "initial values must exceed x");
  }
  ReplicaEnsemble ensemble(initial);
  return iterate(ensemble, params, max_iterations, draw_above);
}

double expected_iterations(int n, int k, double p) {
  require(p > 0.0 && p < 1.0, ErrorKind::Domain, "expected_iterations: p must lie in (0,1)");
  require(n >= 2 && k >= 1 && k <= n - 1, ErrorKind::InvalidParams,
          "expected_iterations: need 1 <= k <= n-1");
  return -static_cast<double>(n) * std::log(p) / k;
}

}  // namespace ams
