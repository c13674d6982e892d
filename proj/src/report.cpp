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

#include "clustereval/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clustereval/oracle.hpp"
#include "clustereval/single_pass.hpp"

namespace clustereval {

std::string_view MeasureName(Measure m) {
  switch (m) {
    case Measure::kClusterF: return "cluster_f";
    case Measure::kKMetric: return "k_metric";
    case Measure::kBCubed: return "b_cubed";
    case Measure::kSeLe: return "se_le";
    case Measure::kPairwise: return "pairwise";
  }
  return "unknown";
}

std::optional<Measure> MeasureFromName(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (MeasureName(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view EngineName(Engine e) {
  return e == Engine::kSinglePass ? "single_pass" : "oracle";
}

std::optional<Engine> EngineFromName(std::string_view name) {
  if (name == "single_pass") return Engine::kSinglePass;
  if (name == "oracle") return Engine::kOracle;
  return std::nullopt;
}

const MetricTriple* FullReport::triple(Measure m) const {
  auto get = [](const std::optional<MetricTriple>& t) {
    return t ? &*t : nullptr;
  };
  switch (m) {
    case Measure::kClusterF: return get(cluster_f);
    case Measure::kKMetric: return get(k_metric);
    case Measure::kBCubed: return get(b_cubed);
    case Measure::kPairwise: return get(pairwise);
    case Measure::kSeLe: return se_le ? &se_le->converted : nullptr;
  }
  return nullptr;
}

void FinishReport(FullReport& report, const EvalPair& pair,
                  const PairwiseResult* pairwise) {
  report.stats.truth_clusters = pair.truth().size();
  report.stats.predicted_clusters = pair.predicted().size();
  report.stats.instances = pair.truth().n_instances();
  report.stats.extra_predicted = pair.extra_predicted();
  report.flags.clear();
  if (pairwise != nullptr) {
    report.stats.pairs = pairwise->totals;
    if (pairwise->recall_degenerate) {
      report.flags.push_back(
          "pairwise_recall_degenerate: truth clusters contain no instance "
          "pairs; pairwise recall defined as 1");
    }
    if (pairwise->precision_degenerate) {
      report.flags.push_back(
          "pairwise_precision_degenerate: predicted clusters contain no "
          "instance pairs; pairwise precision defined as 1");
    }
  } else {
    report.stats.pairs.reset();
  }
  if (pair.extra_predicted() > 0) {
    report.flags.push_back(
        "lenient_extra_predicted: " + std::to_string(pair.extra_predicted()) +
        " predicted instances absent from truth count toward predicted-side "
        "denominators");
  }
}

FullReport Evaluate(const EvalPair& pair, Engine engine, MeasureSet measures,
                    const EvalOptions& options) {
  if (measures.empty()) {
    throw Error(Errc::kInvalidArgument, "no measure requested");
  }
  if (engine == Engine::kOracle) {
    return oracle::OracleAll(pair, measures, options.pair_budget);
  }
  if (measures.all()) return single_pass::EvalAll(pair);

  FullReport report;
  if (measures.contains(Measure::kClusterF)) {
    report.cluster_f = single_pass::EvalClusterF(pair);
  }
  if (measures.contains(Measure::kKMetric)) {
    report.k_metric = single_pass::EvalKMetric(pair);
  }
  if (measures.contains(Measure::kBCubed)) {
    report.b_cubed = single_pass::EvalBCubed(pair);
  }
  if (measures.contains(Measure::kSeLe)) {
    report.se_le = single_pass::EvalSeLe(pair);
  }
  std::optional<PairwiseResult> pw;
  if (measures.contains(Measure::kPairwise)) {
    pw = single_pass::EvalPairwise(pair);
    report.pairwise = pw->scores;
  }
  FinishReport(report, pair, pw ? &*pw : nullptr);
  return report;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double TripleDistance(const MetricTriple& a, const MetricTriple& b) {
  if (a.mean_kind != b.mean_kind) return kInf;
  return std::max({std::fabs(a.recall - b.recall),
                   std::fabs(a.precision - b.precision),
                   std::fabs(a.combined - b.combined)});
}

}  // namespace

double ReportDistance(const FullReport& a, const FullReport& b) {
  if (!(a.stats == b.stats) || a.flags != b.flags) return kInf;
  double worst = 0.0;
  for (Measure m : kAllMeasures) {
    if (m == Measure::kSeLe) {
      if (a.se_le.has_value() != b.se_le.has_value()) return kInf;
      if (!a.se_le) continue;
      worst = std::max(
          {worst, std::fabs(a.se_le->split_error - b.se_le->split_error),
           std::fabs(a.se_le->lump_error - b.se_le->lump_error),
           TripleDistance(a.se_le->converted, b.se_le->converted)});
      continue;
    }
    const MetricTriple* ta = a.triple(m);
    const MetricTriple* tb = b.triple(m);
    if ((ta == nullptr) != (tb == nullptr)) return kInf;
    if (ta) worst = std::max(worst, TripleDistance(*ta, *tb));
  }
  return worst;
}

}  // namespace clustereval
