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

#include "ams/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ams/clt.hpp"
#include "format.hpp"

namespace ams {

namespace {

using detail::digits17;
using detail::shortest;
using detail::trim;

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  fail(ErrorKind::Parse, "invalid value '" + std::string(value) + "' for key '" +
                             std::string(key) + "'");
}

double real_value(std::string_view key, std::string_view value) {
  auto v = detail::parse_double(value);
  if (!v) bad_value(key, value);
  return *v;
}

template <typename Int>
Int integer_value(std::string_view key, std::string_view value) {
  auto v = detail::parse_integer<Int>(value);
  if (!v) bad_value(key, value);
  return *v;
}

}  // namespace

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "distribution") {
    distribution = std::string(value);
  } else if (key == "a") {
    a = real_value(key, value);
  } else if (key == "x") {
    x = real_value(key, value);
  } else if (key == "n") {
    n = integer_value<int>(key, value);
  } else if (key == "k") {
    k = integer_value<int>(key, value);
  } else if (key == "M") {
    M = integer_value<std::uint64_t>(key, value);
  } else if (key == "master_seed") {
    master_seed = integer_value<std::uint64_t>(key, value);
  } else if (key == "true_p") {
    if (value.empty() || value == "none") {
      true_p.reset();
    } else {
      true_p = real_value(key, value);
    }
  } else if (key == "output") {
    output = std::string(value);
  } else if (key == "workers") {
    workers = integer_value<int>(key, value);
  } else {
    fail(ErrorKind::Parse, "unknown configuration key '" + std::string(key) + "'");
  }
}

std::optional<std::string> ExperimentConfig::get(std::string_view key) const {
  if (key == "distribution") return distribution;
  if (key == "a") return shortest(a);
  if (key == "x") return shortest(x);
  if (key == "n") return std::to_string(n);
  if (key == "k") return std::to_string(k);
  if (key == "M") return std::to_string(M);
  if (key == "master_seed") return std::to_string(master_seed);
  if (key == "true_p") return true_p ? shortest(*true_p) : std::string("none");
  if (key == "output") return output;
  if (key == "workers") return std::to_string(workers);
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  require(n >= 2, ErrorKind::InvalidParams, "n must be at least 2");
  require(k >= 1 && k <= n - 1, ErrorKind::InvalidParams, "k must satisfy 1 <= k <= n-1");
  require(M >= 1, ErrorKind::InvalidParams, "M must be at least 1");
  require(workers >= 1, ErrorKind::InvalidParams, "workers must be at least 1");
  require(std::isfinite(a) && std::isfinite(x), ErrorKind::InvalidParams,
          "levels a and x must be finite");
  if (true_p) {
    require(*true_p > 0.0 && *true_p <= 1.0, ErrorKind::InvalidParams,
            "true_p must lie in (0,1]");
  }
  try {
    (void)model();
  } catch (const Error& e) {
    fail(ErrorKind::InvalidParams, e.what());
  }
}

AmsParams ExperimentConfig::params(std::uint64_t stream_index) const {
  AmsParams p;
  p.n = n;
  p.k = k;
  p.a = a;
  p.x = x;
  p.master_seed = master_seed;
  p.stream_index = stream_index;
  return p;
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  for (const char* key : {"distribution", "a", "x", "n", "k", "M", "master_seed", "true_p",
                          "output", "workers"}) {
    if (std::string_view(key) == "true_p" && !true_p) continue;
    out += key;
    out += " = ";
    out += *get(key);
    out += '\n';
  }
  return out;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected key = value");
    }
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return parse(read_text_file(path));
}

void ExperimentConfig::save(const std::string& path) const { write_text_file(path, serialize()); }

std::vector<RunRecord> run_batch(const ExperimentConfig& config,
                                 const std::function<void(std::uint64_t)>& on_progress) {
  config.validate();
  const DistributionModel dist = config.model();
  std::vector<RunRecord> records(config.M);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};

  auto worker = [&] {
    for (;;) {
      std::uint64_t m = next.fetch_add(1, std::memory_order_relaxed);
      if (m >= config.M) return;
      RunRecord& rec = records[m];
      rec.run_index = m;
      rec.seed_index = m;
      try {
        AmsResult r = run_ams(config.params(m), dist);
        rec.p_hat = r.estimate;
        rec.iterations = r.iterations;
        rec.corrector = r.corrector;
      } catch (const Error& e) {
        rec.error = e.kind();
        rec.message = e.what();
      } catch (const std::exception& e) {
        rec.error = ErrorKind::Internal;
        rec.message = e.what();
      }
      std::uint64_t finished = done.fetch_add(1, std::memory_order_relaxed) + 1;
      if (on_progress) on_progress(finished);
    }
  };

  auto count = static_cast<std::uint64_t>(config.workers);
  count = std::min<std::uint64_t>(count, config.M);
  std::vector<std::thread> pool;
  for (std::uint64_t w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

ExperimentReport make_report(const ExperimentConfig& config, const std::vector<RunRecord>& records) {
  ExperimentReport rep;
  rep.M = records.size();
  rep.n = config.n;
  rep.k = config.k;
  rep.a = config.a;
  rep.x = config.x;
  rep.distribution = config.distribution;
  rep.master_seed = config.master_seed;

  std::vector<double> estimates, iterations;
  estimates.reserve(records.size());
  iterations.reserve(records.size());
  for (const auto& r : records) {
    if (!r.ok()) {
      rep.failures.push_back(r);
      continue;
    }
    estimates.push_back(r.p_hat);
    iterations.push_back(static_cast<double>(r.iterations));
  }
  rep.completed = estimates.size();
  if (estimates.empty()) return rep;

  rep.p_hat = moments(estimates);
  Moments it = moments(iterations);
  rep.mean_iterations = it.mean;
  rep.variance_iterations = it.variance;
  rep.scaled_variance = config.n * rep.p_hat.variance;
  rep.reference_is_true = config.true_p.has_value();
  rep.reference_p = config.true_p.value_or(rep.p_hat.mean);

  const double p = rep.reference_p;
  if (p > 0.0 && p < 1.0) {
    rep.asymptotic_variance = asymptotic_variance(p);
    rep.variance_ratio = rep.scaled_variance / rep.asymptotic_variance;
    std::size_t covered = 0;
    for (double e : estimates) {
      if (e > 0.0 && e < 1.0 && confidence_interval(e, config.n, 0.05).contains(p)) ++covered;
    }
    rep.coverage = static_cast<double>(covered) / static_cast<double>(estimates.size());

    if (estimates.size() >= 10) {
      auto sample = NormalizedSample::from_estimates(estimates, config.n, config.k, config.a, p);
      rep.ks = ks_statistic(sample);
      rep.histogram = histogram(sample.values);
      int points = static_cast<int>(std::min<std::size_t>(sample.values.size(), 100));
      rep.qq = qq_data(sample, points);
      std::vector<double> logs;
      logs.reserve(estimates.size());
      const double root_n = std::sqrt(static_cast<double>(config.n));
      bool finite = true;
      for (double e : estimates) {
        double v = root_n * (std::log(e) - std::log(p));
        finite = finite && std::isfinite(v);
        logs.push_back(v);
      }
      if (finite) rep.char_function = empirical_char_function(logs, 1.0);
    }
  }
  return rep;
}

std::string report_json(const ExperimentReport& rep) {
  using nlohmann::json;
  auto real = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["M"] = rep.M;
  j["completed"] = rep.completed;
  j["n"] = rep.n;
  j["k"] = rep.k;
  j["a"] = rep.a;
  j["x"] = rep.x;
  j["distribution"] = rep.distribution;
  j["master_seed"] = rep.master_seed;
  j["reference_p"] = real(rep.reference_p);
  j["reference_is_true_p"] = rep.reference_is_true;
  j["p_hat"] = {{"mean", real(rep.p_hat.mean)},
                {"variance", real(rep.p_hat.variance)},
                {"skewness", real(rep.p_hat.skewness)},
                {"std_error", real(rep.p_hat.std_error)}};
  j["scaled_variance"] = real(rep.scaled_variance);
  j["asymptotic_variance"] = real(rep.asymptotic_variance);
  j["variance_ratio"] = real(rep.variance_ratio);
  j["ks_statistic"] = rep.ks ? real(*rep.ks) : json(nullptr);
  j["histogram"] = {{"edges", rep.histogram.edges}, {"counts", rep.histogram.counts}};
  json qq = json::array();
  for (const auto& [theory, empirical] : rep.qq) qq.push_back({theory, empirical});
  j["qq"] = qq;
  if (rep.char_function) {
    j["char_function_t1"] = {{"re", rep.char_function->real()}, {"im", rep.char_function->imag()}};
  } else {
    j["char_function_t1"] = nullptr;
  }
  j["ci_coverage_95"] = real(rep.coverage);
  j["mean_iterations"] = real(rep.mean_iterations);
  j["variance_iterations"] = real(rep.variance_iterations);
  j["failure_count"] = rep.failures.size();
  json failures = json::array();
  for (const auto& f : rep.failures) {
    failures.push_back({{"run_index", f.run_index},
                        {"kind", std::string(to_string(*f.error))},
                        {"message", f.message}});
  }
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

std::string records_csv(const std::vector<RunRecord>& records) {
  std::string out = "run_index,seed_index,p_hat,iterations,corrector,error\n";
  for (const auto& r : records) {
    out += std::to_string(r.run_index);
    out += ',';
    out += std::to_string(r.seed_index);
    out += ',';
    if (r.ok()) {
      out += digits17(r.p_hat);
      out += ',';
      out += std::to_string(r.iterations);
      out += ',';
      out += digits17(r.corrector);
      out += ',';
    } else {
      out += ",,,";
      out += to_string(*r.error);
    }
    out += '\n';
  }
  return out;
}

std::vector<RunRecord> parse_records_csv(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    auto end = text.find('\n');
    std::string_view line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto where = [&] { return "CSV line " + std::to_string(line_no) + ": "; };
    if (header) {
      header = false;
      if (fields.size() < 5 || fields[0] != "run_index" || fields[2] != "p_hat") {
        fail(ErrorKind::Parse, where() + "missing header row");
      }
      continue;
    }
    if (fields.size() != 5 && fields.size() != 6) {
      fail(ErrorKind::Parse, where() + "expected 5 or 6 fields");
    }
    RunRecord r;
    auto u64 = [&](std::string_view f) {
      auto v = detail::parse_integer<std::uint64_t>(f);
      if (!v) fail(ErrorKind::Parse, where() + "bad integer '" + std::string(f) + "'");
      return *v;
    };
    auto real = [&](std::string_view f) {
      auto v = detail::parse_double(f);
      if (!v) fail(ErrorKind::Parse, where() + "bad number '" + std::string(f) + "'");
      return *v;
    };
    r.run_index = u64(fields[0]);
    r.seed_index = u64(fields[1]);
    std::string_view err = fields.size() == 6 ? fields[5] : std::string_view{};
    if (!err.empty()) {
      r.error = error_kind_from_string(err).value_or(ErrorKind::Internal);
      r.message = std::string(err);
    } else {
      r.p_hat = real(fields[2]);
      r.iterations = u64(fields[3]);
      r.corrector = real(fields[4]);
    }
    out.push_back(std::move(r));
  }
  if (header) fail(ErrorKind::Parse, "CSV is empty");
  return out;
}

void write_records_csv(const std::string& path, const std::vector<RunRecord>& records) {
  write_text_file(path, records_csv(records));
}

std::vector<RunRecord> read_records_csv(const std::string& path) {
  return parse_records_csv(read_text_file(path));
}

std::string histogram_dat(const Histogram& h) {
  std::string out = "# bin_center count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out += digits17(0.5 * (h.edges[b] + h.edges[b + 1]));
    out += ' ';
    out += std::to_string(h.counts[b]);
    out += '\n';
  }
  return out;
}

std::string qq_dat(const std::vector<std::pair<double, double>>& qq) {
  std::string out = "# normal_quantile empirical_quantile\n";
  for (const auto& [theory, empirical] : qq) {
    out += digits17(theory);
    out += ' ';
    out += digits17(empirical);
    out += '\n';
  }
  return out;
}

void write_outputs(const ExperimentConfig& config, const std::vector<RunRecord>& records,
                   const ExperimentReport& report) {
  const std::string& prefix = config.output;
  write_records_csv(prefix + ".csv", records);
  write_text_file(prefix + ".json", report_json(report));
  config.save(prefix + ".cfg");
  write_text_file(prefix + "_hist.dat", histogram_dat(report.histogram));
  write_text_file(prefix + "_qq.dat", qq_dat(report.qq));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace ams
