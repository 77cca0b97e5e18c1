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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ams/rng.hpp"
#include "ams/sampling.hpp"

namespace ams {

struct AmsParams {
  int n = 100;              // replicas
  int k = 1;                // replicas killed and resampled per iteration
  double a = 1.0;           // threshold
  double x = 0.0;           // initial level
  std::uint64_t max_iterations = 0;  // 0 selects default_max_iterations()
  bool record_levels = false;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;

  /// Throws ErrorKind::InvalidParams unless n >= 2, 1 <= k <= n-1 and the
  /// levels are finite.
  void validate() const;
};

struct AmsResult {
  int n = 0;
  int k = 0;
  std::uint64_t iterations = 0;  // J
  int survivors = 0;             // Card{ i : X_i >= a } at termination
  double corrector = 1.0;        // survivors / n
  double estimate = 1.0;         // corrector * (1 - k/n)^J
  std::vector<double> levels;    // Z^1 .. Z^{J+1}, only when recorded
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Draws one value from L(X | X > level).
using ConditionalSampler = std::function<double(double level)>;

/// survivors/n * ((n-k)/n)^iterations, the single place the estimator is formed.
double estimator_value(int n, int k, int survivors, std::uint64_t iterations);

/// ceil(20 n max(a - x, Lambda(a) - Lambda(x), 1) / k) + 100.
std::uint64_t default_max_iterations(const AmsParams& params, const DistributionModel& dist);

/// Runs the idealized AMS algorithm with the stream named in `params`.
AmsResult run_ams(const AmsParams& params, const DistributionModel& dist);

/// Same, drawing from a caller-owned stream.
AmsResult run_ams(const AmsParams& params, const DistributionModel& dist, RngStream& rng);

/// Runs the iteration from a given initial sample (all entries > params.x)
/// with resampling delegated to `draw_above`. The seeded entry points are
/// built on this; it is public so the estimator's dependence on the initial
/// multiset alone can be tested.
AmsResult run_ams_from_sample(std::span<const double> initial, const AmsParams& params,
                              std::uint64_t max_iterations,
                              const ConditionalSampler& draw_above);

/// Large-n order of the mean iteration count, -n log(p) / k.
double expected_iterations(int n, int k, double p);

}  // namespace ams
