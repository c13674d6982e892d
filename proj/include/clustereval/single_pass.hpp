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

// Linear-time evaluation of all five measures from two hash tables: an
// instance -> predicted cluster index table built once, and a per truth
// cluster tally of the predicted indices its instances land in.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "clustereval/model.hpp"
#include "clustereval/report.hpp"

namespace clustereval::single_pass {

// Number of unordered pairs in a k-element set.
constexpr std::uint64_t PairCount(std::uint64_t k) {
  return k < 2 ? 0 : k * (k - 1) / 2;
}

struct PredictedIndex {
  static constexpr std::uint32_t kUnassigned =
      std::numeric_limits<std::uint32_t>::max();

  std::vector<std::uint32_t> p_index;  // dense id -> predicted cluster index
  std::vector<std::uint64_t> c_size;   // predicted cluster index -> size
  std::uint64_t pair_pr_sum = 0;
};

PredictedIndex IndexPredicted(const Clustering& predicted,
                              std::uint32_t id_bound);

struct TallyEntry {
  std::uint32_t key = 0;    // predicted cluster index
  std::uint64_t count = 0;  // |Pkey ∩ Tj|
};

// Entries appear in the order their predicted cluster was first reached
// while scanning the truth cluster.
struct TruthTally {
  std::vector<TallyEntry> entries;
  std::uint32_t max_key = 0;
  std::uint64_t max_val = 0;
};

// Throws Error(kUnindexedInstance) if an instance has no predicted cluster.
TruthTally TallyTruth(const Cluster& truth_cluster, const PredictedIndex& idx);

MetricTriple EvalClusterF(const EvalPair& pair);
MetricTriple EvalKMetric(const EvalPair& pair);
MetricTriple EvalBCubed(const EvalPair& pair);
SeLeResult EvalSeLe(const EvalPair& pair);
PairwiseResult EvalPairwise(const EvalPair& pair);

struct Accumulators {
  std::uint64_t c_match = 0;
  std::uint64_t inst_sum = 0;
  double aap_sum = 0.0;
  double acp_sum = 0.0;
  std::uint64_t sp_sum = 0;
  std::uint64_t lm_sum = 0;
  std::uint64_t inst_tr_sum = 0;
  std::uint64_t inst_pr_sum = 0;
  std::uint64_t pair_tr_sum = 0;
  std::uint64_t pair_pr_sum = 0;
  std::uint64_t pair_int_sum = 0;
};

// Fused pass; fills every measure, the stats and the flags.
FullReport EvalAll(const EvalPair& pair);

// The accumulators EvalAll derives its report from.
Accumulators Accumulate(const EvalPair& pair);

}  // namespace clustereval::single_pass
