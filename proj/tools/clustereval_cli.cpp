// Copyright 2026 The clustereval Authors.
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

// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 usage or i/o error, 2 parse error, 3 validation
// error, 4 internal invariant breach, 5 engines disagree (check), 6 oracle
// pair budget exceeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "clustereval/clustereval.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDivergent = 5;
constexpr double kCheckTolerance = 1e-12;

struct ContextDeleter {
  void operator()(ce_context* c) const { ce_context_destroy(c); }
};
struct ReportDeleter {
  void operator()(ce_report* r) const { ce_report_destroy(r); }
};
using ContextPtr = std::unique_ptr<ce_context, ContextDeleter>;
using ReportPtr = std::unique_ptr<ce_report, ReportDeleter>;

// Thrown to unwind with a specific exit code after printing a diagnostic.
struct ExitError {
  int code;
};

int ExitCodeOf(ce_status status) {
  return status == CE_ERR_IO ? kExitUsage : static_cast<int>(status);
}

void Check(ce_status status, const std::string& what) {
  if (status == CE_OK) return;
  std::cerr << "clustereval: " << what << ": " << ce_last_error() << '\n';
  throw ExitError{ExitCodeOf(status)};
}

ContextPtr NewContext() {
  ce_context* raw = nullptr;
  Check(ce_context_create(&raw), "create context");
  return ContextPtr(raw);
}

ReportPtr Evaluate(ce_context* ctx, ce_engine engine, unsigned measures) {
  ce_report* raw = nullptr;
  Check(ce_evaluate(ctx, engine, measures, &raw), "evaluate");
  return ReportPtr(raw);
}

std::string Render(const ce_report* report, ce_style style) {
  char* raw = nullptr;
  Check(ce_report_render(report, style, &raw), "render report");
  std::string text(raw);
  ce_string_free(raw);
  return text;
}

unsigned MeasureBits(const std::string& name) {
  if (name == "all") return CE_MEASURES_ALL;
  ce_measure m;
  Check(ce_measure_from_name(name.c_str(), &m), "--measure");
  return CE_MEASURE_BIT(m);
}

const std::map<std::string, ce_format> kFormats = {
    {"auto", CE_FORMAT_AUTO},
    {"clusters", CE_FORMAT_CLUSTERS},
    {"pairs", CE_FORMAT_PAIRS}};
const std::map<std::string, ce_engine> kEngines = {
    {"single_pass", CE_ENGINE_SINGLE_PASS}, {"oracle", CE_ENGINE_ORACLE}};
const std::map<std::string, ce_coverage> kCoverage = {
    {"strict", CE_COVERAGE_STRICT}, {"lenient", CE_COVERAGE_LENIENT}};
const std::map<std::string, ce_style> kStyles = {
    {"machine", CE_STYLE_MACHINE}, {"table", CE_STYLE_TABLE}};

struct InputOptions {
  std::string truth_path;
  std::string pred_path;
  std::string format = "auto";
  std::string coverage = "strict";
  std::uint64_t pair_budget = 100'000'000;
};

void AddInputOptions(CLI::App* cmd, InputOptions& in, bool required) {
  auto* truth = cmd->add_option("--truth", in.truth_path, "Truth clustering file");
  auto* pred = cmd->add_option("--pred", in.pred_path, "Predicted clustering file");
  if (required) {
    truth->required();
    pred->required();
  }
  cmd->add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"auto", "clusters", "pairs"}))
      ->capture_default_str();
  cmd->add_option("--coverage", in.coverage, "Coverage mode")
      ->check(CLI::IsMember({"strict", "lenient"}))
      ->capture_default_str();
  cmd->add_option("--pair-budget", in.pair_budget,
                  "Maximum pairs the oracle may enumerate")
      ->capture_default_str();
}

ContextPtr LoadInputs(const InputOptions& in) {
  ContextPtr ctx = NewContext();
  Check(ce_context_set_coverage(ctx.get(), kCoverage.at(in.coverage)),
        "--coverage");
  Check(ce_context_set_pair_budget(ctx.get(), in.pair_budget), "--pair-budget");
  const ce_format fmt = kFormats.at(in.format);
  Check(ce_context_load_file(ctx.get(), CE_ROLE_TRUTH, in.truth_path.c_str(),
                             fmt),
        "load truth");
  Check(ce_context_load_file(ctx.get(), CE_ROLE_PREDICTED, in.pred_path.c_str(),
                             fmt),
        "load predicted");
  Check(ce_context_validate(ctx.get()), "validate");
  return ctx;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOptions {
  InputOptions in;
  std::string measure = "all";
  std::string engine = "single_pass";
  std::string output = "table";
};

int RunEvaluate(const EvaluateOptions& opt) {
  ContextPtr ctx = LoadInputs(opt.in);
  ReportPtr report =
      Evaluate(ctx.get(), kEngines.at(opt.engine), MeasureBits(opt.measure));
  std::cout << Render(report.get(), kStyles.at(opt.output));
  return 0;
}

// ---- check -----------------------------------------------------------------

struct CheckOptions {
  InputOptions in;
  std::uint64_t trials = 0;
  std::uint64_t max_n = 100;
  std::uint64_t seed = 1;
};

// Returns true when both engines agree within tolerance.
bool CompareEngines(ce_context* ctx, const std::string& label) {
  ReportPtr fast = Evaluate(ctx, CE_ENGINE_SINGLE_PASS, CE_MEASURES_ALL);
  ReportPtr naive = Evaluate(ctx, CE_ENGINE_ORACLE, CE_MEASURES_ALL);
  double distance = 0.0;
  Check(ce_report_distance(fast.get(), naive.get(), &distance), "compare");
  if (distance <= kCheckTolerance) return true;
  std::cout << "DIVERGENT " << label << " (max difference " << distance
            << ")\n--- single_pass\n"
            << Render(fast.get(), CE_STYLE_MACHINE) << "--- oracle\n"
            << Render(naive.get(), CE_STYLE_MACHINE);
  return false;
}

int RunCheck(const CheckOptions& opt) {
  const bool file_mode = !opt.in.truth_path.empty() || !opt.in.pred_path.empty();
  if (file_mode) {
    if (opt.in.truth_path.empty() || opt.in.pred_path.empty()) {
      std::cerr << "clustereval: check needs both --truth and --pred\n";
      return kExitUsage;
    }
    ContextPtr ctx = LoadInputs(opt.in);
    if (!CompareEngines(ctx.get(), opt.in.truth_path + " vs " +
                                       opt.in.pred_path)) {
      return kExitDivergent;
    }
    std::cout << "OK single_pass and oracle agree within " << kCheckTolerance
              << '\n';
    return 0;
  }
  if (opt.trials == 0) {
    std::cerr << "clustereval: check needs --truth/--pred or --trials\n";
    return kExitUsage;
  }
  std::uint64_t divergent = 0;
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    ce_synth_config config;
    Check(ce_synth_random_config(opt.seed + t, opt.max_n, &config),
          "random config");
    ContextPtr ctx = NewContext();
    Check(ce_context_set_pair_budget(ctx.get(), opt.in.pair_budget),
          "--pair-budget");
    Check(ce_context_generate(ctx.get(), &config), "generate");
    const std::string label =
        "trial " + std::to_string(t) + " (n=" +
        std::to_string(config.n_instances) + ", clusters=" +
        std::to_string(config.n_truth_clusters) + ", seed=" +
        std::to_string(config.seed) + ")";
    if (!CompareEngines(ctx.get(), label)) ++divergent;
  }
  if (divergent > 0) {
    std::cout << divergent << " of " << opt.trials << " trials diverged\n";
    return kExitDivergent;
  }
  std::cout << "OK " << opt.trials << " random trials agree within "
            << kCheckTolerance << '\n';
  return 0;
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  ce_synth_config config{0, 0, 0.0, 0.0, 0.0, 1};
  std::string out_truth;
  std::string out_pred;
  std::string format = "clusters";
};

int RunGen(const GenOptions& opt) {
  ContextPtr ctx = NewContext();
  Check(ce_context_generate(ctx.get(), &opt.config), "generate");
  const ce_format fmt = kFormats.at(opt.format);
  Check(ce_context_write_file(ctx.get(), CE_ROLE_TRUTH, opt.out_truth.c_str(),
                              fmt),
        "write truth");
  Check(ce_context_write_file(ctx.get(), CE_ROLE_PREDICTED,
                              opt.out_pred.c_str(), fmt),
        "write predicted");
  return 0;
}

// ---- bench -----------------------------------------------------------------

struct BenchOptions {
  std::vector<std::uint64_t> sizes;
  std::string engine = "single_pass";
  std::string measure = "every";
  unsigned repeats = 10;
  double mean_cluster_size = 80.0;
  double skew = 0.5;
  double split = 0.1;
  double merge = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t pair_budget = 100'000'000;
};

struct Timing {
  double best = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

Timing TimeEvaluation(ce_context* ctx, ce_engine engine, unsigned measures,
                      unsigned repeats) {
  std::vector<double> seconds;
  seconds.reserve(repeats);
  for (unsigned r = 0; r < repeats; ++r) {
    ReportPtr report = Evaluate(ctx, engine, measures);
    seconds.push_back(ce_report_seconds(report.get()));
  }
  Timing t;
  t.best = *std::min_element(seconds.begin(), seconds.end());
  for (double s : seconds) t.mean += s;
  t.mean /= static_cast<double>(seconds.size());
  for (double s : seconds) t.stddev += (s - t.mean) * (s - t.mean);
  t.stddev = std::sqrt(t.stddev / static_cast<double>(seconds.size()));
  return t;
}

int RunBench(const BenchOptions& opt) {
  std::vector<ce_engine> engines;
  if (opt.engine == "both") {
    engines = {CE_ENGINE_SINGLE_PASS, CE_ENGINE_ORACLE};
  } else {
    engines = {kEngines.at(opt.engine)};
  }
  // (label, bits) rows; "all" is the fused all-in-one evaluation.
  std::vector<std::pair<std::string, unsigned>> rows;
  if (opt.measure == "every" || opt.measure == "all") {
    if (opt.measure == "every") {
      for (int m = CE_MEASURE_CLUSTER_F; m <= CE_MEASURE_PAIRWISE; ++m) {
        rows.emplace_back(ce_measure_name(static_cast<ce_measure>(m)),
                          CE_MEASURE_BIT(m));
      }
    }
    rows.emplace_back("all_in_one", CE_MEASURES_ALL);
  } else {
    rows.emplace_back(opt.measure, MeasureBits(opt.measure));
  }

  std::printf("%10s %10s %12s %12s %14s %14s %14s\n", "n", "clusters",
              "engine", "measure", "best_s", "mean_s", "stddev_s");
  for (std::uint64_t n : opt.sizes) {
    ce_synth_config config;
    config.n_instances = n;
    config.n_truth_clusters = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(static_cast<double>(n) /
                                   opt.mean_cluster_size),
        1, n);
    config.size_skew = opt.skew;
    config.split_rate = opt.split;
    config.merge_rate = opt.merge;
    config.seed = opt.seed;
    ContextPtr ctx = NewContext();
    Check(ce_context_set_pair_budget(ctx.get(), opt.pair_budget),
          "--pair-budget");
    Check(ce_context_generate(ctx.get(), &config), "generate");
    Check(ce_context_validate(ctx.get()), "validate");

    for (ce_engine engine : engines) {
      const char* engine_name =
          engine == CE_ENGINE_SINGLE_PASS ? "single_pass" : "oracle";
      for (const auto& [label, bits] : rows) {
        const Timing t = TimeEvaluation(ctx.get(), engine, bits, opt.repeats);
        std::printf("%10llu %10llu %12s %12s %14.6f %14.6f %14.6f\n",
                    static_cast<unsigned long long>(n),
                    static_cast<unsigned long long>(config.n_truth_clusters),
                    engine_name, label.c_str(), t.best, t.mean, t.stddev);
        std::fflush(stdout);
      }
    }
    ReportPtr summary = Evaluate(ctx.get(), CE_ENGINE_SINGLE_PASS,
                                 CE_MEASURE_BIT(CE_MEASURE_PAIRWISE));
    ce_stats stats;
    Check(ce_report_stats(summary.get(), &stats), "stats");
    std::printf("# n=%llu truth_pairs=%llu predicted_pairs=%llu "
                "intersection_pairs=%llu\n",
                static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(stats.truth_pairs),
                static_cast<unsigned long long>(stats.predicted_pairs),
                static_cast<unsigned long long>(stats.intersection_pairs));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate a predicted clustering against a truth clustering "
               "with Cluster-F, K-metric, SE & LE, Pairwise-F and B-cubed."};
  app.set_version_flag("--version", std::string(ce_version()));
  app.require_subcommand(1);

  const std::vector<std::string> measure_names = {
      "all", "cluster_f", "k_metric", "b_cubed", "se_le", "pairwise"};

  EvaluateOptions eval_opt;
  auto* evaluate = app.add_subcommand("evaluate", "Score predicted vs truth");
  AddInputOptions(evaluate, eval_opt.in, true);
  evaluate->add_option("--measure", eval_opt.measure, "Measure to report")
      ->check(CLI::IsMember(measure_names))
      ->capture_default_str();
  evaluate->add_option("--engine", eval_opt.engine, "Evaluation engine")
      ->check(CLI::IsMember({"single_pass", "oracle"}))
      ->capture_default_str();
  evaluate->add_option("--output", eval_opt.output, "Report style")
      ->check(CLI::IsMember({"machine", "table"}))
      ->capture_default_str();

  CheckOptions check_opt;
  auto* check = app.add_subcommand(
      "check", "Cross-check the single-pass engine against the oracle");
  AddInputOptions(check, check_opt.in, false);
  check->add_option("--trials", check_opt.trials,
                    "Number of random pairs (randomized mode)");
  check->add_option("--max-n", check_opt.max_n,
                    "Largest instance count in randomized mode")
      ->capture_default_str();
  check->add_option("--seed", check_opt.seed, "First seed")
      ->capture_default_str();

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Write a synthetic truth/predicted pair");
  gen->add_option("--n", gen_opt.config.n_instances, "Instances")->required();
  gen->add_option("--clusters", gen_opt.config.n_truth_clusters,
                  "Truth clusters")
      ->required();
  gen->add_option("--skew", gen_opt.config.size_skew, "Cluster size skew")
      ->capture_default_str();
  gen->add_option("--split", gen_opt.config.split_rate, "Split rate")
      ->capture_default_str();
  gen->add_option("--merge", gen_opt.config.merge_rate, "Merge rate")
      ->capture_default_str();
  gen->add_option("--seed", gen_opt.config.seed, "Seed")->capture_default_str();
  gen->add_option("--out-truth", gen_opt.out_truth, "Truth output file")
      ->required();
  gen->add_option("--out-pred", gen_opt.out_pred, "Predicted output file")
      ->required();
  gen->add_option("--format", gen_opt.format, "Output format")
      ->check(CLI::IsMember({"clusters", "pairs"}))
      ->capture_default_str();

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Time evaluation on synthetic data");
  bench->add_option("--sizes", bench_opt.sizes, "Instance counts, e.g. 10000,20000")
      ->required()
      ->delimiter(',');
  bench->add_option("--engine", bench_opt.engine, "Engine")
      ->check(CLI::IsMember({"single_pass", "oracle", "both"}))
      ->capture_default_str();
  std::vector<std::string> bench_measures = measure_names;
  bench_measures.push_back("every");
  bench->add_option("--measure", bench_opt.measure,
                    "Measure to time; 'every' times each one and all-in-one")
      ->check(CLI::IsMember(bench_measures))
      ->capture_default_str();
  bench->add_option("--repeats", bench_opt.repeats, "Trials per measurement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--mean-cluster-size", bench_opt.mean_cluster_size,
                    "Instances per truth cluster on average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--skew", bench_opt.skew, "Cluster size skew")
      ->capture_default_str();
  bench->add_option("--split", bench_opt.split, "Split rate")
      ->capture_default_str();
  bench->add_option("--merge", bench_opt.merge, "Merge rate")
      ->capture_default_str();
  bench->add_option("--seed", bench_opt.seed, "Seed")->capture_default_str();
  bench->add_option("--pair-budget", bench_opt.pair_budget,
                    "Maximum pairs the oracle may enumerate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) return RunEvaluate(eval_opt);
    if (*check) return RunCheck(check_opt);
    if (*gen) return RunGen(gen_opt);
    if (*bench) return RunBench(bench_opt);
  } catch (const ExitError& e) {
    return e.code;
  }
  return kExitUsage;
}
