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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clustereval/model.hpp"

namespace clustereval {

enum class Measure { kClusterF, kKMetric, kBCubed, kSeLe, kPairwise };

inline constexpr std::array<Measure, 5> kAllMeasures = {
    Measure::kClusterF, Measure::kKMetric, Measure::kBCubed, Measure::kSeLe,
    Measure::kPairwise};

// Stable machine name: cluster_f, k_metric, b_cubed, se_le, pairwise.
std::string_view MeasureName(Measure m);
std::optional<Measure> MeasureFromName(std::string_view name);

class MeasureSet {
 public:
  constexpr MeasureSet() = default;
  static constexpr MeasureSet All() { return MeasureSet(0x1f); }
  static constexpr MeasureSet Of(Measure m) {
    return MeasureSet(1u << static_cast<unsigned>(m));
  }
  static constexpr MeasureSet FromBits(unsigned bits) {
    return MeasureSet(bits & 0x1f);
  }

  constexpr bool contains(Measure m) const {
    return (bits_ >> static_cast<unsigned>(m)) & 1u;
  }
  constexpr bool all() const { return bits_ == 0x1f; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned bits() const { return bits_; }
  constexpr MeasureSet operator|(MeasureSet o) const {
    return MeasureSet(bits_ | o.bits_);
  }

 private:
  constexpr explicit MeasureSet(unsigned bits) : bits_(bits) {}
  unsigned bits_ = 0;
};

enum class Engine { kSinglePass, kOracle };

std::string_view EngineName(Engine e);
std::optional<Engine> EngineFromName(std::string_view name);

struct Stats {
  std::uint64_t truth_clusters = 0;
  std::uint64_t predicted_clusters = 0;
  std::uint64_t instances = 0;  // N, counted over truth
  std::uint64_t extra_predicted = 0;
  std::optional<PairTotals> pairs;  // present when pairwise was evaluated

  friend bool operator==(const Stats&, const Stats&) = default;
};

// Results of one evaluation run. Measures that were not requested are empty.
struct FullReport {
  std::optional<MetricTriple> cluster_f;
  std::optional<MetricTriple> k_metric;  // (AAP, ACP, geometric)
  std::optional<MetricTriple> b_cubed;   // (AAP, ACP, harmonic)
  std::optional<SeLeResult> se_le;
  std::optional<MetricTriple> pairwise;
  Stats stats;
  std::vector<std::string> flags;

  // For kSeLe this is the converted (1-SE, 1-LE, F) triple. Null when the
  // measure was not evaluated.
  const MetricTriple* triple(Measure m) const;
};

inline constexpr std::uint64_t kDefaultPairBudget = 100'000'000;

struct EvalOptions {
  // Upper bound on pairs the oracle may materialize (truth + predicted).
  std::uint64_t pair_budget = kDefaultPairBudget;
};

// Library entry point. With the single-pass engine and all measures this
// runs the fused evaluator; otherwise each requested measure is evaluated on
// its own.
FullReport Evaluate(const EvalPair& pair, Engine engine, MeasureSet measures,
                    const EvalOptions& options = {});

// Fills the structural statistics (and pair totals when `pairwise` is
// given) and the degenerate-case flags.
void FinishReport(FullReport& report, const EvalPair& pair,
                  const PairwiseResult* pairwise);

// Largest absolute difference between two reports over the measures both
// contain. Returns +inf if the reports disagree on which measures are
// present or on any integer statistic.
double ReportDistance(const FullReport& a, const FullReport& b);

}  // namespace clustereval
