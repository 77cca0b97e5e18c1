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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ams/error.hpp"
#include "ams/sampling.hpp"
#include "ams/splitting.hpp"
#include "ams/stats.hpp"

namespace ams {

/// Settings of a batch of independent AMS runs.
///
/// Stored on disk as flat "key = value" lines; '#' starts a comment.
/// Keys: distribution, a, x, n, k, M, master_seed, true_p, output, workers.
struct ExperimentConfig {
  std::string distribution = "exponential(1)";
  double a = 6.0;
  double x = 0.0;
  int n = 100;
  int k = 1;
  std::uint64_t M = 1000;
  std::uint64_t master_seed = 1;
  std::optional<double> true_p;
  std::string output = "ams_out";
  int workers = 1;

  /// Assigns one field from its textual value. ErrorKind::Parse for an
  /// unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);
  /// Textual value of a key ("none" for an unset true_p), nullopt for an
  /// unknown key.
  std::optional<std::string> get(std::string_view key) const;

  /// ErrorKind::InvalidParams unless 1 <= k <= n-1, M >= 1, workers >= 1,
  /// the levels are finite, true_p (if any) lies in (0,1] and the
  /// distribution parses.
  void validate() const;

  DistributionModel model() const { return DistributionModel::parse(distribution); }
  AmsParams params(std::uint64_t stream_index) const;

  std::string serialize() const;
  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Outcome of run `run_index`; `error` is set when the run threw.
struct RunRecord {
  std::uint64_t run_index = 0;
  std::uint64_t seed_index = 0;
  double p_hat = 0.0;
  std::uint64_t iterations = 0;
  double corrector = 0.0;
  std::optional<ErrorKind> error;
  std::string message;

  bool ok() const noexcept { return !error.has_value(); }
};

/// Runs config.M realizations on config.workers threads. Run m uses stream
/// index m, and records come back ordered by run index, so the result does
/// not depend on the worker count. `on_progress` (if set) is called from
/// worker threads with the number of finished runs.
std::vector<RunRecord> run_batch(const ExperimentConfig& config,
                                 const std::function<void(std::uint64_t)>& on_progress = {});

struct ExperimentReport {
  std::uint64_t M = 0;         // runs attempted
  std::uint64_t completed = 0; // runs without error
  int n = 0;
  int k = 0;
  double a = 0.0;
  double x = 0.0;
  std::string distribution;
  std::uint64_t master_seed = 0;

  double reference_p = 0.0;       // true_p, or the empirical mean when absent
  bool reference_is_true = false;

  Moments p_hat;
  double scaled_variance = 0.0;      // n Var[p_hat]
  double asymptotic_variance = 0.0;  // -p^2 log p at reference_p, 0 if undefined
  double variance_ratio = 0.0;       // scaled_variance / asymptotic_variance

  // Filled when the normalized sample exists (reference_p in (0,1), M >= 10).
  std::optional<double> ks;
  Histogram histogram;
  std::vector<std::pair<double, double>> qq;  // (normal quantile, empirical quantile)
  std::optional<std::complex<double>> char_function;  // empirical, t = 1

  double coverage = 0.0;  // fraction of 95% plug-in intervals containing reference_p
  double mean_iterations = 0.0;
  double variance_iterations = 0.0;

  std::vector<RunRecord> failures;
};

ExperimentReport make_report(const ExperimentConfig& config, const std::vector<RunRecord>& records);

std::string report_json(const ExperimentReport& report);

/// Header run_index,seed_index,p_hat,iterations,corrector,error; reals with
/// 17 significant digits, error empty for successful runs.
std::string records_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_records_csv(std::string_view text);

void write_records_csv(const std::string& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(const std::string& path);

/// Writes PREFIX.csv, PREFIX.json, PREFIX.cfg, PREFIX_hist.dat and
/// PREFIX_qq.dat, with PREFIX = config.output.
void write_outputs(const ExperimentConfig& config, const std::vector<RunRecord>& records,
                   const ExperimentReport& report);

/// Two-column gnuplot data.
std::string histogram_dat(const Histogram& histogram);
std::string qq_dat(const std::vector<std::pair<double, double>>& qq);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ams
