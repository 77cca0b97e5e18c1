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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ams/error.hpp"
#include "ams/rng.hpp"
#include "ams/sampling.hpp"
#include "ams/splitting.hpp"
#include "ams/stats.hpp"

namespace {

using ams::AmsParams;
using ams::DistributionModel;
using ams::ErrorKind;

AmsParams params(int n, int k, double a, std::uint64_t seed = 1, std::uint64_t stream = 0) {
  AmsParams p;
  p.n = n;
  p.k = k;
  p.a = a;
  p.master_seed = seed;
  p.stream_index = stream;
  return p;
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const ams::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ams::Error thrown";
  return ErrorKind::Internal;
}

const DistributionModel kExp = DistributionModel::exponential();

TEST(RunAms, StartAtOrAboveThresholdIsTrivial) {
  for (double x : {2.0, 3.5}) {
    auto p = params(10, 3, 2.0);
    p.x = x;
    auto r = ams::run_ams(p, kExp);
    EXPECT_EQ(r.estimate, 1.0);
    EXPECT_EQ(r.iterations, 0u);
    EXPECT_EQ(r.corrector, 1.0);
  }
}

TEST(RunAms, InvalidParameters) {
  EXPECT_EQ(kind_of([] { ams::run_ams(params(10, 0, 1.0), kExp); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { ams::run_ams(params(10, 10, 1.0), kExp); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { ams::run_ams(params(1, 1, 1.0), kExp); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { ams::run_ams(params(10, 1, NAN), kExp); }), ErrorKind::InvalidParams);
}

TEST(RunAms, EstimatorIdentityAndRange) {
  for (auto [n, k] : {std::pair{10, 1}, std::pair{10, 9}, std::pair{100, 10}, std::pair{57, 13}}) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto r = ams::run_ams(params(n, k, 3.0, 5, s), kExp);
      double fraction = static_cast<double>(n - k) / n;
      ASSERT_EQ(r.estimate, r.corrector * std::pow(fraction, static_cast<double>(r.iterations)));
      ASSERT_EQ(r.corrector, static_cast<double>(r.survivors) / n);
      ASSERT_GE(r.survivors, n - k + 1);
      ASSERT_LE(r.survivors, n);
      ASSERT_GT(r.estimate, 0.0);
      ASSERT_LE(r.estimate, 1.0);
      if (r.estimate == 1.0) {
        ASSERT_EQ(r.iterations, 0u);
      }
    }
  }
}

TEST(RunAms, KOneHasUnitCorrector) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    EXPECT_EQ(ams::run_ams(params(50, 1, 2.0, 2, s), kExp).corrector, 1.0);
  }
}

TEST(RunAms, Deterministic) {
  auto a = ams::run_ams(params(1000, 10, 6.0, 77, 3), kExp);
  auto b = ams::run_ams(params(1000, 10, 6.0, 77, 3), kExp);
  auto c = ams::run_ams(params(1000, 10, 6.0, 77, 4), kExp);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.master_seed, 77u);
  EXPECT_EQ(a.stream_index, 3u);
  EXPECT_FALSE(a.iterations == c.iterations && a.estimate == c.estimate);
}

TEST(RunAms, LevelsStrictlyIncrease) {
  auto p = params(200, 7, 4.0, 9, 1);
  p.record_levels = true;
  auto r = ams::run_ams(p, kExp);
  ASSERT_EQ(r.levels.size(), r.iterations + 1);
  for (std::size_t j = 1; j < r.levels.size(); ++j) EXPECT_GT(r.levels[j], r.levels[j - 1]);
  for (std::size_t j = 0; j + 1 < r.levels.size(); ++j) EXPECT_LT(r.levels[j], p.a);
  EXPECT_GE(r.levels.back(), p.a);
}

TEST(RunAms, IterationCap) {
  auto p = params(100, 1, 6.0);
  p.max_iterations = 5;
  EXPECT_EQ(kind_of([&] { ams::run_ams(p, kExp); }), ErrorKind::IterationCapExceeded);
}

TEST(RunAms, StalledLevelsAreReported) {
  // A sampler that cannot move past the current level.
  auto p = params(10, 2, 5.0);
  std::vector<double> initial(10, 1.0);
  EXPECT_EQ(kind_of([&] { ams::run_ams_from_sample(initial, p, 1000, [](double l) { return l; }); }),
            ErrorKind::IterationCapExceeded);
}

TEST(RunAms, DefaultIterationCap) {
  auto p = params(100, 10, 6.0);
  EXPECT_EQ(ams::default_max_iterations(p, kExp), 1300u);
  p.a = 0.5;
  EXPECT_EQ(ams::default_max_iterations(p, kExp), 300u);
  // Lambda span dominates for a compressed law.
  p.a = 1.0 - std::exp(-6.0);
  EXPECT_NEAR(static_cast<double>(ams::default_max_iterations(p, DistributionModel::uniform())),
              1300.0, 1.0);
}

TEST(RunAms, PermutationOfInitialSampleIrrelevant) {
  const auto p = params(50, 5, 3.0);
  ams::RngStream init(31, 0);
  std::vector<double> initial(50);
  for (auto& v : initial) v = init.exponential();
  auto reference = [&](std::vector<double> start) {
    ams::RngStream rng(31, 1);
    return ams::run_ams_from_sample(start, p, 100000,
                                    [&](double level) { return level + rng.exponential(); });
  };
  auto base = reference(initial);
  std::mt19937 shuffler(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(initial.begin(), initial.end(), shuffler);
    auto r = reference(initial);
    EXPECT_EQ(r.iterations, base.iterations);
    EXPECT_EQ(r.corrector, base.corrector);
    EXPECT_EQ(r.estimate, base.estimate);
  }
}

TEST(RunAms, FromSampleValidatesInput) {
  auto p = params(5, 1, 2.0);
  std::vector<double> short_sample(4, 1.0), below(5, -1.0);
  auto draw = [](double l) { return l + 1.0; };
  EXPECT_EQ(kind_of([&] { ams::run_ams_from_sample(short_sample, p, 10, draw); }),
            ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([&] { ams::run_ams_from_sample(below, p, 10, draw); }),
            ErrorKind::InvalidParams);
}

struct UnbiasedCase {
  int n, k;
};

class Unbiasedness : public ::testing::TestWithParam<UnbiasedCase> {};

TEST_P(Unbiasedness, MeanWithinFourStandardErrors) {
  const auto [n, k] = GetParam();
  const int m = 200000;
  std::vector<double> est(m);
  ams::RngStream rng(1000 + n, static_cast<std::uint64_t>(k));
  auto p = params(n, k, 2.0);
  for (auto& e : est) e = ams::run_ams(p, kExp, rng).estimate;
  auto mo = ams::moments(est);
  EXPECT_LE(std::abs(mo.mean - std::exp(-2.0)), 4.0 * mo.std_error)
      << "mean " << mo.mean << " se " << mo.std_error;
}

INSTANTIATE_TEST_SUITE_P(Exponential, Unbiasedness,
                         ::testing::Values(UnbiasedCase{10, 1}, UnbiasedCase{10, 3},
                                           UnbiasedCase{50, 10}, UnbiasedCase{100, 25}));

TEST(RunAms, KOneIterationsArePoisson) {
  const int m = 100000;
  std::vector<double> j(m);
  for (int i = 0; i < m; ++i) {
    j[i] = static_cast<double>(ams::run_ams(params(100, 1, 6.0, 123, i), kExp).iterations);
  }
  auto mo = ams::moments(j);
  EXPECT_NEAR(mo.mean, 600.0, 4.0 * std::sqrt(600.0 / m));
  EXPECT_GE(mo.variance / mo.mean, 0.97);
  EXPECT_LE(mo.variance / mo.mean, 1.03);
}

TEST(ExpectedIterations, Examples) {
  EXPECT_NEAR(ams::expected_iterations(100, 10, std::exp(-6.0)), 60.0, 1e-12);
  EXPECT_NEAR(ams::expected_iterations(100, 1, std::exp(-6.0)), 600.0, 1e-11);
  EXPECT_EQ(kind_of([] { ams::expected_iterations(100, 1, 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { ams::expected_iterations(100, 1, 1.0); }), ErrorKind::Domain);
}

TEST(ExpectedIterations, MatchesSimulationAtModerateN) {
  const int m = 10000;
  ams::RngStream rng(99, 0);
  double total = 0.0;
  auto p = params(1000, 10, 6.0);
  for (int i = 0; i < m; ++i) total += static_cast<double>(ams::run_ams(p, kExp, rng).iterations);
  EXPECT_NEAR(total / m, 600.0, 0.05 * 600.0);
}

TEST(RunAms, MatchedSeedsGiveSameRunThroughLambda) {
  // Uniform(0,1) with threshold 1 - e^-a against Exponential(1) with
  // threshold a: Lambda maps one run onto the other draw by draw.
  const double a = 3.0;
  int identical = 0;
  const int m = 1000;
  for (int i = 0; i < m; ++i) {
    auto pe = params(100, 10, a, 8, i);
    auto pu = pe;
    pu.a = -std::expm1(-a);
    auto re = ams::run_ams(pe, kExp);
    auto ru = ams::run_ams(pu, DistributionModel::uniform());
    identical += re.iterations == ru.iterations && re.survivors == ru.survivors;
  }
  EXPECT_GE(identical, m * 99 / 100);
}

TEST(RunAms, LawInvariantUnderLambda) {
  const int m = 10000;
  std::vector<double> uni(m), ex(m);
  auto pe = params(100, 10, 6.0, 41);
  auto pu = params(100, 10, -std::expm1(-6.0), 42);
  for (int i = 0; i < m; ++i) {
    pe.stream_index = pu.stream_index = static_cast<std::uint64_t>(i);
    ex[i] = ams::run_ams(pe, kExp).estimate;
    uni[i] = ams::run_ams(pu, DistributionModel::uniform()).estimate;
  }
  EXPECT_GT(ams::ks_two_sample(uni, ex).p_value, 1e-3);
}

}  // namespace
