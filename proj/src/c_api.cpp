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

#include "clustereval/clustereval.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "clustereval/io.hpp"
#include "clustereval/model.hpp"
#include "clustereval/report.hpp"
#include "clustereval/synth.hpp"

namespace ce = clustereval;

struct ce_context {
  ce::Interner names;
  std::shared_ptr<const ce::Clustering> truth;
  std::shared_ptr<const ce::Clustering> predicted;
  ce::CoverageMode coverage = ce::CoverageMode::kStrict;
  std::uint64_t pair_budget = ce::kDefaultPairBudget;
  std::optional<ce::EvalPair> validated;
};

struct ce_report {
  ce::io::ReportDocument doc;
};

namespace {

#ifndef CLUSTEREVAL_VERSION
#define CLUSTEREVAL_VERSION "unknown"
#endif

thread_local std::string last_error;

ce_status StatusOf(ce::Errc code) {
  switch (code) {
    case ce::Errc::kParse: return CE_ERR_PARSE;
    case ce::Errc::kIo: return CE_ERR_IO;
    case ce::Errc::kDuplicateInstance:
    case ce::Errc::kEmptyCluster:
    case ce::Errc::kEmptyClustering:
    case ce::Errc::kMissingFromPredicted:
    case ce::Errc::kExtraInPredicted: return CE_ERR_VALIDATION;
    case ce::Errc::kUnindexedInstance: return CE_ERR_INTERNAL;
    case ce::Errc::kPairBudgetExceeded: return CE_ERR_PAIR_BUDGET;
    case ce::Errc::kInfeasibleConfig:
    case ce::Errc::kInvalidArgument: return CE_ERR_INVALID_ARGUMENT;
  }
  return CE_ERR_INTERNAL;
}

ce_status Fail(ce_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
ce_status Guard(Fn&& fn) {
  try {
    return fn();
  } catch (const ce::Error& e) {
    return Fail(StatusOf(e.code()),
                std::string(ce::ErrcName(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CE_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CE_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(CE_ERR_INTERNAL, "unknown error");
  }
}

std::optional<ce::io::ClusteringFormat> FormatOf(ce_format f) {
  switch (f) {
    case CE_FORMAT_AUTO: return ce::io::ClusteringFormat::kAuto;
    case CE_FORMAT_CLUSTERS: return ce::io::ClusteringFormat::kClusterLines;
    case CE_FORMAT_PAIRS: return ce::io::ClusteringFormat::kMembershipPairs;
  }
  return std::nullopt;
}

bool ValidRole(ce_role role) {
  return role == CE_ROLE_TRUTH || role == CE_ROLE_PREDICTED;
}

ce::Role RoleOf(ce_role role) {
  return role == CE_ROLE_TRUTH ? ce::Role::kTruth : ce::Role::kPredicted;
}

void Install(ce_context* ctx, ce_role role, ce::Clustering clustering) {
  auto shared = std::make_shared<const ce::Clustering>(std::move(clustering));
  (role == CE_ROLE_TRUTH ? ctx->truth : ctx->predicted) = std::move(shared);
  ctx->validated.reset();
}

const ce::EvalPair& EnsureValidated(ce_context* ctx) {
  if (!ctx->validated) {
    if (!ctx->truth || !ctx->predicted) {
      throw ce::Error(ce::Errc::kInvalidArgument,
                      "both truth and predicted clusterings must be loaded");
    }
    ctx->validated =
        ce::Validate(ctx->truth, ctx->predicted, ctx->coverage, &ctx->names);
  }
  return *ctx->validated;
}

ce_triple ToC(const ce::MetricTriple& t) {
  return {t.recall, t.precision, t.combined,
          t.mean_kind == ce::MeanKind::kGeometric ? 1 : 0};
}

}  // namespace

extern "C" {

const char* ce_version(void) { return CLUSTEREVAL_VERSION; }

const char* ce_last_error(void) { return last_error.c_str(); }

const char* ce_status_name(ce_status status) {
  switch (status) {
    case CE_OK: return "ok";
    case CE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CE_ERR_PARSE: return "parse error";
    case CE_ERR_VALIDATION: return "validation error";
    case CE_ERR_INTERNAL: return "internal error";
    case CE_ERR_PAIR_BUDGET: return "pair budget exceeded";
    case CE_ERR_IO: return "i/o error";
    case CE_ERR_OUT_OF_MEMORY: return "out of memory";
  }
  return "unknown status";
}

ce_status ce_context_create(ce_context** out) {
  if (out == nullptr) return Fail(CE_ERR_INVALID_ARGUMENT, "null out");
  return Guard([&] {
    *out = new ce_context();
    return CE_OK;
  });
}

void ce_context_destroy(ce_context* ctx) { delete ctx; }

ce_status ce_context_set_coverage(ce_context* ctx, ce_coverage mode) {
  if (ctx == nullptr) return Fail(CE_ERR_INVALID_ARGUMENT, "null context");
  if (mode != CE_COVERAGE_STRICT && mode != CE_COVERAGE_LENIENT) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "unknown coverage mode");
  }
  ctx->coverage = mode == CE_COVERAGE_STRICT ? ce::CoverageMode::kStrict
                                             : ce::CoverageMode::kLenient;
  ctx->validated.reset();
  return CE_OK;
}

ce_status ce_context_set_pair_budget(ce_context* ctx, uint64_t pairs) {
  if (ctx == nullptr) return Fail(CE_ERR_INVALID_ARGUMENT, "null context");
  ctx->pair_budget = pairs;
  return CE_OK;
}

ce_status ce_context_load_file(ce_context* ctx, ce_role role, const char* path,
                               ce_format format) {
  if (ctx == nullptr || path == nullptr || !ValidRole(role)) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to load_file");
  }
  const auto fmt = FormatOf(format);
  if (!fmt) return Fail(CE_ERR_INVALID_ARGUMENT, "unknown format");
  return Guard([&] {
    Install(ctx, role,
            ce::io::ReadClusteringFile(path, *fmt, RoleOf(role), ctx->names));
    return CE_OK;
  });
}

ce_status ce_context_load_text(ce_context* ctx, ce_role role, const char* text,
                               size_t length, ce_format format) {
  if (ctx == nullptr || (text == nullptr && length > 0) || !ValidRole(role)) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to load_text");
  }
  const auto fmt = FormatOf(format);
  if (!fmt) return Fail(CE_ERR_INVALID_ARGUMENT, "unknown format");
  return Guard([&] {
    Install(ctx, role,
            ce::io::ParseClustering(std::string_view(text, length), *fmt,
                                    RoleOf(role), ctx->names));
    return CE_OK;
  });
}

ce_status ce_context_generate(ce_context* ctx, const ce_synth_config* config) {
  if (ctx == nullptr || config == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to generate");
  }
  return Guard([&] {
    ce::synth::SynthConfig c;
    c.n_instances = config->n_instances;
    c.n_truth_clusters = config->n_truth_clusters;
    c.size_skew = config->size_skew;
    c.split_rate = config->split_rate;
    c.merge_rate = config->merge_rate;
    c.seed = config->seed;
    ce::synth::SyntheticPair generated = ce::synth::Generate(c);
    ctx->names = std::move(generated.names);
    ctx->truth = generated.pair.shared_truth();
    ctx->predicted = generated.pair.shared_predicted();
    ctx->coverage = ce::CoverageMode::kStrict;
    ctx->validated = std::move(generated.pair);
    return CE_OK;
  });
}

ce_status ce_context_write_file(const ce_context* ctx, ce_role role,
                                const char* path, ce_format format) {
  if (ctx == nullptr || path == nullptr || !ValidRole(role)) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to write_file");
  }
  const auto fmt = FormatOf(format);
  if (!fmt) return Fail(CE_ERR_INVALID_ARGUMENT, "unknown format");
  const auto& clustering =
      role == CE_ROLE_TRUTH ? ctx->truth : ctx->predicted;
  if (!clustering) return Fail(CE_ERR_INVALID_ARGUMENT, "nothing loaded");
  return Guard([&] {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ce::Error(ce::Errc::kIo,
                      std::string("cannot open '") + path + "' for writing");
    }
    ce::io::WriteClustering(out, *clustering, ctx->names, *fmt);
    out.flush();
    if (!out) {
      throw ce::Error(ce::Errc::kIo,
                      std::string("error writing '") + path + "'");
    }
    return CE_OK;
  });
}

ce_status ce_context_validate(ce_context* ctx) {
  if (ctx == nullptr) return Fail(CE_ERR_INVALID_ARGUMENT, "null context");
  return Guard([&] {
    EnsureValidated(ctx);
    return CE_OK;
  });
}

ce_status ce_context_instance_count(const ce_context* ctx, ce_role role,
                                    uint64_t* out) {
  if (ctx == nullptr || out == nullptr || !ValidRole(role)) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to instance_count");
  }
  const auto& clustering =
      role == CE_ROLE_TRUTH ? ctx->truth : ctx->predicted;
  *out = clustering ? clustering->n_instances() : 0;
  return CE_OK;
}

ce_status ce_evaluate(ce_context* ctx, ce_engine engine, unsigned measures,
                      ce_report** out) {
  if (ctx == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to evaluate");
  }
  if (engine != CE_ENGINE_SINGLE_PASS && engine != CE_ENGINE_ORACLE) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "unknown engine");
  }
  if ((measures & CE_MEASURES_ALL) == 0 || (measures & ~CE_MEASURES_ALL)) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad measure set");
  }
  *out = nullptr;
  return Guard([&] {
    const ce::EvalPair& pair = EnsureValidated(ctx);
    auto report = std::make_unique<ce_report>();
    report->doc.engine = engine == CE_ENGINE_SINGLE_PASS
                             ? ce::Engine::kSinglePass
                             : ce::Engine::kOracle;
    report->doc.version = CLUSTEREVAL_VERSION;
    const auto start = std::chrono::steady_clock::now();
    report->doc.report =
        ce::Evaluate(pair, report->doc.engine,
                     ce::MeasureSet::FromBits(measures), {ctx->pair_budget});
    report->doc.evaluation_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    *out = report.release();
    return CE_OK;
  });
}

void ce_report_destroy(ce_report* report) { delete report; }

ce_status ce_report_triple(const ce_report* report, ce_measure measure,
                           ce_triple* out) {
  if (report == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to report_triple");
  }
  const ce::FullReport& r = report->doc.report;
  if (measure < CE_MEASURE_CLUSTER_F || measure > CE_MEASURE_PAIRWISE) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "unknown measure");
  }
  const ce::MetricTriple* t = r.triple(static_cast<ce::Measure>(measure));
  if (!t) return Fail(CE_ERR_INVALID_ARGUMENT, "measure not evaluated");
  *out = ToC(*t);
  return CE_OK;
}

ce_status ce_report_se_le(const ce_report* report, double* se, double* le) {
  if (report == nullptr || se == nullptr || le == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to report_se_le");
  }
  const auto& s = report->doc.report.se_le;
  if (!s) return Fail(CE_ERR_INVALID_ARGUMENT, "se_le not evaluated");
  *se = s->split_error;
  *le = s->lump_error;
  return CE_OK;
}

ce_status ce_report_stats(const ce_report* report, ce_stats* out) {
  if (report == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to report_stats");
  }
  const ce::Stats& s = report->doc.report.stats;
  *out = ce_stats{};
  out->truth_clusters = s.truth_clusters;
  out->predicted_clusters = s.predicted_clusters;
  out->instances = s.instances;
  out->extra_predicted = s.extra_predicted;
  if (s.pairs) {
    out->has_pairs = 1;
    out->truth_pairs = s.pairs->truth_pairs;
    out->predicted_pairs = s.pairs->predicted_pairs;
    out->intersection_pairs = s.pairs->intersection_pairs;
  }
  return CE_OK;
}

size_t ce_report_flag_count(const ce_report* report) {
  return report == nullptr ? 0 : report->doc.report.flags.size();
}

const char* ce_report_flag(const ce_report* report, size_t index) {
  if (report == nullptr || index >= report->doc.report.flags.size()) {
    return nullptr;
  }
  return report->doc.report.flags[index].c_str();
}

double ce_report_seconds(const ce_report* report) {
  return report == nullptr ? 0.0 : report->doc.evaluation_seconds;
}

ce_status ce_report_render(const ce_report* report, ce_style style,
                           char** out) {
  if (report == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to report_render");
  }
  if (style != CE_STYLE_MACHINE && style != CE_STYLE_TABLE) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "unknown style");
  }
  *out = nullptr;
  return Guard([&] {
    const std::string text = style == CE_STYLE_MACHINE
                                 ? ce::io::RenderMachine(report->doc)
                                 : ce::io::RenderTable(report->doc.report);
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return CE_OK;
  });
}

ce_status ce_report_distance(const ce_report* a, const ce_report* b,
                             double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to report_distance");
  }
  *out = ce::ReportDistance(a->doc.report, b->doc.report);
  return CE_OK;
}

void ce_string_free(char* s) { std::free(s); }

const char* ce_measure_name(ce_measure measure) {
  if (measure < CE_MEASURE_CLUSTER_F || measure > CE_MEASURE_PAIRWISE) {
    return nullptr;
  }
  return ce::MeasureName(static_cast<ce::Measure>(measure)).data();
}

ce_status ce_measure_from_name(const char* name, ce_measure* out) {
  if (name == nullptr || out == nullptr) {
    return Fail(CE_ERR_INVALID_ARGUMENT, "bad arguments to measure_from_name");
  }
  const auto m = ce::MeasureFromName(name);
  if (!m) return Fail(CE_ERR_INVALID_ARGUMENT,
                      std::string("unknown measure '") + name + "'");
  *out = static_cast<ce_measure>(*m);
  return CE_OK;
}

ce_status ce_synth_random_config(uint64_t seed, uint64_t max_n,
                                 ce_synth_config* out) {
  if (out == nullptr) return Fail(CE_ERR_INVALID_ARGUMENT, "null out");
  return Guard([&] {
    const ce::synth::SynthConfig c = ce::synth::RandomConfig(seed, max_n);
    *out = {c.n_instances, c.n_truth_clusters, c.size_skew,
            c.split_rate,  c.merge_rate,       c.seed};
    return CE_OK;
  });
}

}  // extern "C"
