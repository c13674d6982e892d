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

#include "clustereval/oracle.hpp"

#include <algorithm>
#include <string>

namespace clustereval::oracle {

namespace {

std::uint64_t EncodePair(InstanceId a, InstanceId b) {
  if (b < a) std::swap(a, b);
  return (static_cast<std::uint64_t>(a.value) << 32) | b.value;
}

std::vector<Cluster> SortedCopies(const Clustering& c) {
  std::vector<Cluster> out(c.clusters().begin(), c.clusters().end());
  for (Cluster& cl : out) std::sort(cl.begin(), cl.end());
  return out;
}

// n_ij for every (marked cluster, other cluster) combination: marks the
// members of `fixed`, then counts marked members of `other`.
class OverlapCounter {
 public:
  explicit OverlapCounter(std::uint32_t bound) : mark_(bound, 0) {}

  void Mark(const Cluster& fixed) {
    for (InstanceId x : fixed) mark_[x.value] = 1;
  }
  void Unmark(const Cluster& fixed) {
    for (InstanceId x : fixed) mark_[x.value] = 0;
  }
  bool Marked(InstanceId x) const { return mark_[x.value] != 0; }
  std::uint64_t Count(const Cluster& other) const {
    std::uint64_t n = 0;
    for (InstanceId x : other) n += mark_[x.value];
    return n;
  }

 private:
  std::vector<char> mark_;
};

std::vector<std::uint32_t> MembershipOf(const Clustering& c,
                                        std::uint32_t bound) {
  std::vector<std::uint32_t> owner(bound,
                                   std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (InstanceId x : c.cluster(i)) {
      owner[x.value] = static_cast<std::uint32_t>(i);
    }
  }
  return owner;
}

}  // namespace

PairSet PairSet::FromClusters(const Clustering& clustering,
                              std::uint64_t* budget) {
  PairSet set;
  std::uint64_t produced = 0;
  for (const Cluster& cluster : clustering.clusters()) {
    for (std::size_t a = 0; a < cluster.size(); ++a) {
      for (std::size_t b = a + 1; b < cluster.size(); ++b) {
        if (++produced > *budget) {
          throw Error(Errc::kPairBudgetExceeded,
                      std::string("enumerating ") +
                          RoleName(clustering.role()) +
                          " pairs exceeds the oracle pair budget; use the "
                          "single-pass engine or raise the budget");
        }
        set.pairs_.push_back(EncodePair(cluster[a], cluster[b]));
      }
    }
  }
  std::sort(set.pairs_.begin(), set.pairs_.end());
  set.pairs_.erase(std::unique(set.pairs_.begin(), set.pairs_.end()),
                   set.pairs_.end());
  *budget -= produced;
  return set;
}

std::uint64_t PairSet::IntersectionSize(const PairSet& other) const {
  std::uint64_t n = 0;
  auto a = pairs_.begin();
  auto b = other.pairs_.begin();
  while (a != pairs_.end() && b != other.pairs_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

bool PairSet::Contains(InstanceId a, InstanceId b) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), EncodePair(a, b));
}

// |P ∩ T|: predicted clusters equal, as sets, to some truth cluster.
MetricTriple OracleClusterF(const EvalPair& pair) {
  const std::vector<Cluster> truth = SortedCopies(pair.truth());
  const std::vector<Cluster> predicted = SortedCopies(pair.predicted());
  std::uint64_t matches = 0;
  for (const Cluster& pi : predicted) {
    for (const Cluster& tj : truth) {
      if (pi == tj) ++matches;
    }
  }
  return MetricTriple::Harmonic(
      static_cast<double>(matches) / static_cast<double>(truth.size()),
      static_cast<double>(matches) / static_cast<double>(predicted.size()));
}

namespace {

struct Purity {
  double aap = 0.0;
  double acp = 0.0;
};

// AAP sums truth -> predicted, ACP predicted -> truth.
Purity OriginalPurity(const EvalPair& pair) {
  const Clustering& truth = pair.truth();
  const Clustering& predicted = pair.predicted();
  OverlapCounter counter(pair.id_bound());
  double aap = 0.0;
  for (const Cluster& tj : truth.clusters()) {
    counter.Mark(tj);
    const double n_j = static_cast<double>(tj.size());
    for (const Cluster& pi : predicted.clusters()) {
      const double n_ij = static_cast<double>(counter.Count(pi));
      aap += n_ij * n_ij / n_j;
    }
    counter.Unmark(tj);
  }
  double acp = 0.0;
  for (const Cluster& pi : predicted.clusters()) {
    counter.Mark(pi);
    const double n_i = static_cast<double>(pi.size());
    for (const Cluster& tj : truth.clusters()) {
      const double n_ij = static_cast<double>(counter.Count(tj));
      acp += n_ij * n_ij / n_i;
    }
    counter.Unmark(pi);
  }
  const double n = static_cast<double>(truth.n_instances());
  return {aap / n, acp / n};
}

}  // namespace

MetricTriple OracleKMetric(const EvalPair& pair) {
  const Purity p = OriginalPurity(pair);
  return MetricTriple::Geometric(p.aap, p.acp);
}

// Instance by instance: |P(t) ∩ T(t)| / |T(t)| and / |P(t)|.
MetricTriple OracleBCubed(const EvalPair& pair) {
  const Clustering& truth = pair.truth();
  const Clustering& predicted = pair.predicted();
  const std::vector<std::uint32_t> t_of = MembershipOf(truth, pair.id_bound());
  const std::vector<std::uint32_t> p_of =
      MembershipOf(predicted, pair.id_bound());
  double recall_sum = 0.0;
  double precision_sum = 0.0;
  for (const Cluster& cluster : truth.clusters()) {
    for (InstanceId t : cluster) {
      const Cluster& t_cluster = truth.cluster(t_of[t.value]);
      const Cluster& p_cluster = predicted.cluster(p_of[t.value]);
      std::uint64_t common = 0;
      for (InstanceId x : t_cluster) {
        if (p_of[x.value] == p_of[t.value]) ++common;
      }
      recall_sum += static_cast<double>(common) /
                    static_cast<double>(t_cluster.size());
      precision_sum += static_cast<double>(common) /
                       static_cast<double>(p_cluster.size());
    }
  }
  const double n = static_cast<double>(truth.n_instances());
  return MetricTriple::Harmonic(recall_sum / n, precision_sum / n);
}

// For every author a, Pa is found by scanning all predicted clusters; the
// error counts are explicit set differences.
SeLeResult OracleSeLe(const EvalPair& pair) {
  const Clustering& truth = pair.truth();
  const Clustering& predicted = pair.predicted();
  OverlapCounter counter(pair.id_bound());
  std::uint64_t split = 0, lumped = 0, truth_total = 0, best_total = 0;
  for (const Cluster& ta : truth.clusters()) {
    counter.Mark(ta);
    std::size_t best = 0;
    std::uint64_t best_overlap = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      const std::uint64_t overlap = counter.Count(predicted.cluster(i));
      if (i == 0 || PreferredBestMatch(overlap, predicted.cluster(i).size(), i,
                                       best_overlap,
                                       predicted.cluster(best).size(), best)) {
        best = i;
        best_overlap = overlap;
      }
    }
    const Cluster& pa = predicted.cluster(best);
    // x in Pa, x not in Ta
    for (InstanceId x : pa) {
      if (!counter.Marked(x)) ++lumped;
    }
    counter.Unmark(ta);
    counter.Mark(pa);
    // x in Ta, x not in Pa
    for (InstanceId x : ta) {
      if (!counter.Marked(x)) ++split;
    }
    counter.Unmark(pa);
    truth_total += ta.size();
    best_total += pa.size();
  }
  return MakeSeLe(
      static_cast<double>(split) / static_cast<double>(truth_total),
      static_cast<double>(lumped) / static_cast<double>(best_total));
}

PairwiseResult OraclePairwise(const EvalPair& pair,
                              std::uint64_t pair_budget) {
  std::uint64_t budget = pair_budget;
  const PairSet truth_pairs = PairSet::FromClusters(pair.truth(), &budget);
  const PairSet predicted_pairs =
      PairSet::FromClusters(pair.predicted(), &budget);

  PairwiseResult r;
  r.totals.truth_pairs = truth_pairs.size();
  r.totals.predicted_pairs = predicted_pairs.size();
  r.totals.intersection_pairs = truth_pairs.IntersectionSize(predicted_pairs);
  r.recall_degenerate = r.totals.truth_pairs == 0;
  r.precision_degenerate = r.totals.predicted_pairs == 0;
  const double common = static_cast<double>(r.totals.intersection_pairs);
  const double recall =
      r.recall_degenerate
          ? 1.0
          : common / static_cast<double>(r.totals.truth_pairs);
  const double precision =
      r.precision_degenerate
          ? 1.0
          : common / static_cast<double>(r.totals.predicted_pairs);
  r.scores = MetricTriple::Harmonic(recall, precision);
  return r;
}

FullReport OracleAll(const EvalPair& pair, MeasureSet measures,
                     std::uint64_t pair_budget) {
  FullReport report;
  if (measures.contains(Measure::kClusterF)) {
    report.cluster_f = OracleClusterF(pair);
  }
  if (measures.contains(Measure::kKMetric)) {
    report.k_metric = OracleKMetric(pair);
  }
  if (measures.contains(Measure::kBCubed)) {
    report.b_cubed = OracleBCubed(pair);
  }
  if (measures.contains(Measure::kSeLe)) report.se_le = OracleSeLe(pair);
  std::optional<PairwiseResult> pw;
  if (measures.contains(Measure::kPairwise)) {
    pw = OraclePairwise(pair, pair_budget);
    report.pairwise = pw->scores;
  }
  FinishReport(report, pair, pw ? &*pw : nullptr);
  return report;
}

}  // namespace clustereval::oracle
