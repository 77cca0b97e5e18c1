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

// ams: command-line front end to libams.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ams/ams.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> distribution, a, x, n, k, M, master_seed, true_p, output, workers;

  void add_to(CLI::App* app) {
    app->add_option("-c,--config", config_path, "Configuration file (key = value lines)");
    app->add_option("-d,--distribution", distribution,
                    "Law of X: exponential(rate), uniform(lo,hi), weibull(shape,scale), "
                    "pareto(scale,alpha)");
    app->add_option("-a,--threshold", a, "Target level a");
    app->add_option("-x,--start", x, "Initial level x");
    app->add_option("-n,--replicas", n, "Number of replicas n");
    app->add_option("-k,--kill", k, "Replicas resampled per iteration k");
    app->add_option("-M,--runs", M, "Independent runs in a batch");
    app->add_option("-s,--seed", master_seed, "Master seed");
    app->add_option("--true-p", true_p, "Known probability used for normalization");
    app->add_option("-o,--output", output, "Output prefix");
    app->add_option("-w,--workers", workers, "Worker threads (default: $AMS_WORKERS or 1)");
  }

  std::vector<std::pair<const char*, const std::optional<std::string>*>> overrides() const {
    return {{"distribution", &distribution}, {"a", &a},
            {"x", &x},                       {"n", &n},
            {"k", &k},                       {"M", &M},
            {"master_seed", &master_seed},   {"true_p", &true_p},
            {"output", &output},             {"workers", &workers}};
  }
};

struct CliError {
  int code;
};

int exit_code_for(ams_status s) {
  return s == AMS_ERR_INVALID_PARAMS || s == AMS_ERR_PARSE || s == AMS_ERR_NULL_ARGUMENT
             ? kExitUsage
             : kExitFailure;
}

void check(ams_status s, const char* what) {
  if (s == AMS_OK) return;
  std::fprintf(stderr, "ams: %s: %s: %s\n", what, ams_status_name(s), ams_last_error());
  throw CliError{exit_code_for(s)};
}

class Config {
 public:
  Config() { check(ams_config_create(&handle_), "config"); }
  ~Config() { ams_config_destroy(handle_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  ams_config* get() const { return handle_; }

  void set(const char* key, const std::string& value) {
    ams_status s = ams_config_set(handle_, key, value.c_str());
    if (s != AMS_OK) {
      std::fprintf(stderr, "ams: %s: %s\n", key, ams_last_error());
      throw CliError{kExitUsage};
    }
  }

  std::string value(const char* key) const {
    const char* v = nullptr;
    check(ams_config_get(handle_, key, &v), "config");
    return v;
  }

 private:
  ams_config* handle_ = nullptr;
};

// Precedence, lowest first: built-in defaults, config file, $AMS_WORKERS,
// command-line flags.
void build_config(Config& config, const ConfigFlags& flags) {
  if (!flags.config_path.empty()) {
    check(ams_config_load(config.get(), flags.config_path.c_str()), "config file");
  }
  if (const char* env = std::getenv("AMS_WORKERS"); env != nullptr && *env != '\0') {
    config.set("workers", env);
  }
  for (const auto& [key, value] : flags.overrides()) {
    if (value->has_value()) config.set(key, **value);
  }
  check(ams_config_validate(config.get()), "config");
}

int cmd_run(const ConfigFlags& flags, std::uint64_t stream) {
  Config config;
  build_config(config, flags);
  ams_run_result r{};
  check(ams_run_single(config.get(), stream, &r), "run");
  std::printf("distribution = %s\n", config.value("distribution").c_str());
  std::printf("n = %s\nk = %s\na = %s\nx = %s\n", config.value("n").c_str(),
              config.value("k").c_str(), config.value("a").c_str(), config.value("x").c_str());
  std::printf("master_seed = %s\n", config.value("master_seed").c_str());
  std::printf("stream_index = %llu\n", static_cast<unsigned long long>(r.stream_index));
  std::printf("p_hat = %.17g\n", r.p_hat);
  std::printf("iterations = %llu\n", static_cast<unsigned long long>(r.iterations));
  std::printf("survivors = %d\n", r.survivors);
  std::printf("corrector = %.17g\n", r.corrector);
  std::printf("ci95_lower = %.17g\n", r.ci_lower);
  std::printf("ci95_upper = %.17g\n", r.ci_upper);
  return 0;
}

void print_summary(const ams_summary& s) {
  std::printf("runs            %llu (%llu failed)\n", static_cast<unsigned long long>(s.runs),
              static_cast<unsigned long long>(s.failures));
  std::printf("mean p_hat      %.10g  (se %.3g)\n", s.mean, s.std_error);
  std::printf("reference p     %.10g\n", s.reference_p);
  std::printf("n Var[p_hat]    %.6g  (limit %.6g, ratio %.4f)\n", s.scaled_variance,
              s.asymptotic_variance, s.variance_ratio);
  std::printf("skewness        %.4f\n", s.skewness);
  if (!std::isnan(s.ks_statistic)) std::printf("KS vs N(0,1)    %.5f\n", s.ks_statistic);
  std::printf("95%% coverage    %.4f\n", s.coverage);
  std::printf("mean iterations %.3f\n", s.mean_iterations);
  if (!std::isnan(s.char_re)) std::printf("char fn (t=1)   %.5f%+.5fi\n", s.char_re, s.char_im);
}

struct Progress {
  std::uint64_t step = 1;
  bool enabled = false;
};

void report_progress(std::uint64_t finished, std::uint64_t total, void* user) {
  const auto* p = static_cast<const Progress*>(user);
  if (p->enabled && (finished % p->step == 0 || finished == total)) {
    std::fprintf(stderr, "\r%llu/%llu runs", static_cast<unsigned long long>(finished),
                 static_cast<unsigned long long>(total));
    if (finished == total) std::fputc('\n', stderr);
  }
}

int finish_experiment(ams_experiment* exp, bool json) {
  ams_summary s{};
  check(ams_experiment_summary(exp, &s), "summary");
  check(ams_experiment_write_outputs(exp), "write outputs");
  if (json) {
    const char* text = nullptr;
    check(ams_experiment_report_json(exp, &text), "report");
    std::fputs(text, stdout);
  } else {
    print_summary(s);
  }
  return s.completed == 0 ? kExitFailure : 0;
}

int cmd_experiment(const ConfigFlags& flags, bool json, bool quiet) {
  Config config;
  build_config(config, flags);
  Progress progress;
  progress.enabled = !quiet;
  progress.step = std::max<std::uint64_t>(1, std::stoull(config.value("M")) / 100);
  ams_experiment* exp = nullptr;
  check(ams_experiment_run(config.get(), report_progress, &progress, &exp), "experiment");
  int code = 0;
  try {
    code = finish_experiment(exp, json);
  } catch (...) {
    ams_experiment_destroy(exp);
    throw;
  }
  ams_experiment_destroy(exp);
  return code;
}

int cmd_analyze(ConfigFlags flags, const std::string& csv, bool json) {
  namespace fs = std::filesystem;
  if (flags.config_path.empty()) {
    fs::path sidecar = fs::path(csv).replace_extension(".cfg");
    if (fs::exists(sidecar)) flags.config_path = sidecar.string();
  }
  if (!flags.output) {
    flags.output = (fs::path(csv).parent_path() / fs::path(csv).stem()).string() + "_analysis";
  }
  Config config;
  build_config(config, flags);
  ams_experiment* exp = nullptr;
  check(ams_experiment_load_csv(config.get(), csv.c_str(), &exp), "analyze");
  int code = 0;
  try {
    code = finish_experiment(exp, json);
  } catch (...) {
    ams_experiment_destroy(exp);
    throw;
  }
  ams_experiment_destroy(exp);
  return code;
}

void print_check(const char* name, int passed, double actual, double expected, double tolerance,
                 const char* detail, void*) {
  std::printf("%s %-28s actual=%.6g expected=%.6g tol=%.3g  %s\n", passed ? "PASS" : "FAIL", name,
              actual, expected, tolerance, detail);
  std::fflush(stdout);
}

int cmd_verify(const std::string& level, bool json) {
  ams_verify_report* report = nullptr;
  ams_verify_level lv = level == "full" ? AMS_VERIFY_FULL : AMS_VERIFY_QUICK;
  check(ams_verify_run(lv, json ? nullptr : print_check, nullptr, &report), "verify");
  bool passed = ams_verify_passed(report) != 0;
  if (json) {
    const char* text = nullptr;
    ams_status s = ams_verify_json(report, &text);
    if (s == AMS_OK) std::fputs(text, stdout);
  } else {
    std::printf("%s: %zu failed\n", passed ? "verification passed" : "verification FAILED",
                ams_verify_failures(report));
  }
  ams_verify_destroy(report);
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive multilevel splitting: runs, batches and analytic checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ams_version()));

  ConfigFlags run_flags, exp_flags, analyze_flags;
  std::uint64_t stream = 0;
  bool exp_json = false, quiet = false, analyze_json = false, verify_json = false;
  std::string csv_path, level = "quick";

  auto* run = app.add_subcommand("run", "One seeded AMS run");
  run_flags.add_to(run);
  run->add_option("--stream", stream, "Stream index (the run index within a batch)");

  auto* experiment = app.add_subcommand("experiment", "Batch of M independent runs");
  exp_flags.add_to(experiment);
  experiment->add_flag("--json", exp_json, "Print the JSON report instead of a summary");
  experiment->add_flag("-q,--quiet", quiet, "No progress output");

  auto* analyze = app.add_subcommand("analyze", "Recompute the report from a run CSV");
  analyze_flags.add_to(analyze);
  analyze->add_option("csv", csv_path, "CSV written by `experiment`")->required();
  analyze->add_flag("--json", analyze_json, "Print the JSON report instead of a summary");

  auto* verify = app.add_subcommand("verify", "Analytic verification suite");
  verify->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--json", verify_json, "Print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags, stream);
    if (*experiment) return cmd_experiment(exp_flags, exp_json, quiet);
    if (*analyze) return cmd_analyze(analyze_flags, csv_path, analyze_json);
    if (*verify) return cmd_verify(level, verify_json);
  } catch (const CliError& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ams: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
