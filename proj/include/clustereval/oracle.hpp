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

// Deliberately naive evaluators that follow each measure's defining
// equations term by term. They share nothing with the single-pass engine
// beyond the model types, so agreement between the two is meaningful.

#include <cstdint>
#include <vector>

#include "clustereval/model.hpp"
#include "clustereval/report.hpp"

namespace clustereval::oracle {

// Unordered instance pairs of a clustering, canonicalized (smaller id
// first) and kept sorted.
class PairSet {
 public:
  // Enumerates every pair of every cluster. Throws
  // Error(kPairBudgetExceeded) once more than `*budget` pairs have been
  // produced; on success the budget is reduced by size().
  static PairSet FromClusters(const Clustering& clustering,
                              std::uint64_t* budget);

  std::uint64_t size() const { return pairs_.size(); }
  std::uint64_t IntersectionSize(const PairSet& other) const;
  bool Contains(InstanceId a, InstanceId b) const;

 private:
  std::vector<std::uint64_t> pairs_;
};

MetricTriple OracleClusterF(const EvalPair& pair);
MetricTriple OracleKMetric(const EvalPair& pair);
MetricTriple OracleBCubed(const EvalPair& pair);
SeLeResult OracleSeLe(const EvalPair& pair);
PairwiseResult OraclePairwise(const EvalPair& pair,
                              std::uint64_t pair_budget = kDefaultPairBudget);

FullReport OracleAll(const EvalPair& pair, MeasureSet measures,
                     std::uint64_t pair_budget = kDefaultPairBudget);

}  // namespace clustereval::oracle
