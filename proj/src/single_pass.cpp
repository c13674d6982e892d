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

#include "clustereval/single_pass.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace clustereval::single_pass {

namespace {

double Ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

// |Pi ∩ Tj|^2 / denom, the per-intersection purity contribution.
double PurityTerm(std::uint64_t overlap, std::uint64_t denom) {
  return static_cast<double>(overlap * overlap) / static_cast<double>(denom);
}

// Zero pair totals make the pairwise ratio vacuous; it is then defined as 1.
double PairRatio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 1.0 : Ratio(num, den);
}

PairwiseResult MakePairwise(const PairTotals& totals) {
  PairwiseResult r;
  r.totals = totals;
  r.recall_degenerate = totals.truth_pairs == 0;
  r.precision_degenerate = totals.predicted_pairs == 0;
  r.scores = MetricTriple::Harmonic(
      PairRatio(totals.intersection_pairs, totals.truth_pairs),
      PairRatio(totals.intersection_pairs, totals.predicted_pairs));
  return r;
}

struct PuritySums {
  double aap_sum = 0.0;
  double acp_sum = 0.0;
  std::uint64_t inst_sum = 0;
};

// Shared by the K-metric and B-cubed evaluators: both report the same
// recall (AAP) and precision (ACP).
PuritySums ComputePurity(const EvalPair& pair) {
  const PredictedIndex idx =
      IndexPredicted(pair.predicted(), pair.id_bound());
  PuritySums sums;
  for (const Cluster& tj : pair.truth().clusters()) {
    sums.inst_sum += tj.size();
    const TruthTally tally = TallyTruth(tj, idx);
    for (const TallyEntry& e : tally.entries) {
      sums.aap_sum += PurityTerm(e.count, tj.size());
      sums.acp_sum += PurityTerm(e.count, idx.c_size[e.key]);
    }
  }
  return sums;
}

}  // namespace

PredictedIndex IndexPredicted(const Clustering& predicted,
                              std::uint32_t id_bound) {
  PredictedIndex idx;
  idx.p_index.assign(std::max(id_bound, predicted.id_bound()),
                     PredictedIndex::kUnassigned);
  idx.c_size.reserve(predicted.size());
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const Cluster& pi = predicted.cluster(i);
    for (InstanceId p : pi) {
      idx.p_index[p.value] = static_cast<std::uint32_t>(i);
    }
    idx.c_size.push_back(pi.size());
    idx.pair_pr_sum += PairCount(pi.size());
  }
  return idx;
}

TruthTally TallyTruth(const Cluster& truth_cluster, const PredictedIndex& idx) {
  TruthTally tally;
  std::unordered_map<std::uint32_t, std::size_t> slot;  // key -> entry
  slot.reserve(std::min<std::size_t>(truth_cluster.size(), 64));
  for (InstanceId t : truth_cluster) {
    const std::uint32_t key = t.value < idx.p_index.size()
                                  ? idx.p_index[t.value]
                                  : PredictedIndex::kUnassigned;
    if (key == PredictedIndex::kUnassigned) {
      throw Error(Errc::kUnindexedInstance,
                  "instance #" + std::to_string(t.value) +
                      " has no predicted cluster");
    }
    auto [it, inserted] = slot.try_emplace(key, tally.entries.size());
    if (inserted) tally.entries.push_back({key, 0});
    ++tally.entries[it->second].count;
  }
  for (const TallyEntry& e : tally.entries) {
    if (tally.max_val == 0 ||
        PreferredBestMatch(e.count, idx.c_size[e.key], e.key, tally.max_val,
                           idx.c_size[tally.max_key], tally.max_key)) {
      tally.max_key = e.key;
      tally.max_val = e.count;
    }
  }
  return tally;
}

MetricTriple EvalClusterF(const EvalPair& pair) {
  const PredictedIndex idx =
      IndexPredicted(pair.predicted(), pair.id_bound());
  std::uint64_t c_match = 0;
  for (const Cluster& tj : pair.truth().clusters()) {
    const TruthTally tally = TallyTruth(tj, idx);
    for (const TallyEntry& e : tally.entries) {
      if (e.count == tj.size() && idx.c_size[e.key] == tj.size()) ++c_match;
    }
  }
  return MetricTriple::Harmonic(Ratio(c_match, pair.truth().size()),
                                Ratio(c_match, pair.predicted().size()));
}

MetricTriple EvalKMetric(const EvalPair& pair) {
  const PuritySums s = ComputePurity(pair);
  return MetricTriple::Geometric(s.aap_sum / static_cast<double>(s.inst_sum),
                                 s.acp_sum / static_cast<double>(s.inst_sum));
}

MetricTriple EvalBCubed(const EvalPair& pair) {
  const PuritySums s = ComputePurity(pair);
  return MetricTriple::Harmonic(s.aap_sum / static_cast<double>(s.inst_sum),
                                s.acp_sum / static_cast<double>(s.inst_sum));
}

SeLeResult EvalSeLe(const EvalPair& pair) {
  const PredictedIndex idx =
      IndexPredicted(pair.predicted(), pair.id_bound());
  std::uint64_t sp_sum = 0, lm_sum = 0, inst_tr_sum = 0, inst_pr_sum = 0;
  for (const Cluster& tj : pair.truth().clusters()) {
    const TruthTally tally = TallyTruth(tj, idx);
    const std::uint64_t best_size = idx.c_size[tally.max_key];
    sp_sum += tj.size() - tally.max_val;
    lm_sum += best_size - tally.max_val;
    inst_tr_sum += tj.size();
    inst_pr_sum += best_size;
  }
  return MakeSeLe(Ratio(sp_sum, inst_tr_sum), Ratio(lm_sum, inst_pr_sum));
}

PairwiseResult EvalPairwise(const EvalPair& pair) {
  const PredictedIndex idx =
      IndexPredicted(pair.predicted(), pair.id_bound());
  PairTotals totals;
  totals.predicted_pairs = idx.pair_pr_sum;
  for (const Cluster& tj : pair.truth().clusters()) {
    totals.truth_pairs += PairCount(tj.size());
    const TruthTally tally = TallyTruth(tj, idx);
    for (const TallyEntry& e : tally.entries) {
      totals.intersection_pairs += PairCount(e.count);
    }
  }
  return MakePairwise(totals);
}

Accumulators Accumulate(const EvalPair& pair) {
  const PredictedIndex idx =
      IndexPredicted(pair.predicted(), pair.id_bound());
  Accumulators acc;
  acc.pair_pr_sum = idx.pair_pr_sum;
  for (const Cluster& tj : pair.truth().clusters()) {
    const std::uint64_t tj_size = tj.size();
    acc.inst_sum += tj_size;
    acc.pair_tr_sum += PairCount(tj_size);
    const TruthTally tally = TallyTruth(tj, idx);
    for (const TallyEntry& e : tally.entries) {
      const std::uint64_t pi_size = idx.c_size[e.key];
      if (e.count == tj_size && pi_size == tj_size) ++acc.c_match;
      acc.aap_sum += PurityTerm(e.count, tj_size);
      acc.acp_sum += PurityTerm(e.count, pi_size);
      acc.pair_int_sum += PairCount(e.count);
    }
    const std::uint64_t best_size = idx.c_size[tally.max_key];
    acc.sp_sum += tj_size - tally.max_val;
    acc.lm_sum += best_size - tally.max_val;
    acc.inst_tr_sum += tj_size;
    acc.inst_pr_sum += best_size;
  }
  return acc;
}

FullReport EvalAll(const EvalPair& pair) {
  const Accumulators acc = Accumulate(pair);
  const double inst = static_cast<double>(acc.inst_sum);
  const double aap = acc.aap_sum / inst;
  const double acp = acc.acp_sum / inst;

  FullReport report;
  report.cluster_f =
      MetricTriple::Harmonic(Ratio(acc.c_match, pair.truth().size()),
                             Ratio(acc.c_match, pair.predicted().size()));
  report.k_metric = MetricTriple::Geometric(aap, acp);
  report.b_cubed = MetricTriple::Harmonic(aap, acp);
  report.se_le = MakeSeLe(Ratio(acc.sp_sum, acc.inst_tr_sum),
                          Ratio(acc.lm_sum, acc.inst_pr_sum));
  const PairwiseResult pw = MakePairwise(
      {acc.pair_tr_sum, acc.pair_pr_sum, acc.pair_int_sum});
  report.pairwise = pw.scores;
  FinishReport(report, pair, &pw);
  return report;
}

}  // namespace clustereval::single_pass
