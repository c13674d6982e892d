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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "clustereval/oracle.hpp"
#include "clustereval/report.hpp"
#include "clustereval/single_pass.hpp"
#include "clustereval/synth.hpp"
#include "test_util.hpp"

namespace clustereval {
namespace {

constexpr double kTol = 1e-12;
constexpr std::uint64_t kTrials = 1000;

synth::SyntheticPair RandomPair(std::uint64_t seed) {
  return synth::Generate(synth::RandomConfig(seed, 120));
}

std::vector<Cluster> Copy(const Clustering& c) {
  return {c.clusters().begin(), c.clusters().end()};
}

EvalPair Rebuild(std::vector<Cluster> truth, std::vector<Cluster> predicted,
                 CoverageMode mode = CoverageMode::kStrict) {
  return Validate(Clustering(std::move(truth), Role::kTruth),
                  Clustering(std::move(predicted), Role::kPredicted), mode);
}

bool SameBits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void ExpectSameBits(const MetricTriple& a, const MetricTriple& b,
                    const char* what) {
  EXPECT_TRUE(SameBits(a.recall, b.recall)) << what;
  EXPECT_TRUE(SameBits(a.precision, b.precision)) << what;
  EXPECT_TRUE(SameBits(a.combined, b.combined)) << what;
}

TEST(PropertyTest, SinglePassMatchesOracle) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const FullReport fast = single_pass::EvalAll(g.pair);
    const FullReport slow = oracle::OracleAll(g.pair, MeasureSet::All());
    ASSERT_LE(ReportDistance(fast, slow), kTol) << "seed " << seed;
  }
}

TEST(PropertyTest, BCubedEqualsKMetricComponents) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const FullReport r = single_pass::EvalAll(g.pair);
    ASSERT_TRUE(SameBits(r.b_cubed->recall, r.k_metric->recall));
    ASSERT_TRUE(SameBits(r.b_cubed->precision, r.k_metric->precision));
    const MetricTriple b = oracle::OracleBCubed(g.pair);
    const MetricTriple k = oracle::OracleKMetric(g.pair);
    ASSERT_NEAR(b.recall, k.recall, kTol);
    ASSERT_NEAR(b.precision, k.precision, kTol);
  }
}

TEST(PropertyTest, FusedPassMatchesSeparateEvaluators) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const FullReport all = single_pass::EvalAll(g.pair);
    ExpectSameBits(*all.cluster_f, single_pass::EvalClusterF(g.pair),
                   "cluster_f");
    ExpectSameBits(*all.k_metric, single_pass::EvalKMetric(g.pair),
                   "k_metric");
    ExpectSameBits(*all.b_cubed, single_pass::EvalBCubed(g.pair), "b_cubed");
    const SeLeResult sl = single_pass::EvalSeLe(g.pair);
    EXPECT_TRUE(SameBits(all.se_le->split_error, sl.split_error));
    EXPECT_TRUE(SameBits(all.se_le->lump_error, sl.lump_error));
    ExpectSameBits(all.se_le->converted, sl.converted, "se_le");
    const PairwiseResult pw = single_pass::EvalPairwise(g.pair);
    ExpectSameBits(*all.pairwise, pw.scores, "pairwise");
    EXPECT_EQ(all.stats.pairs, pw.totals);
    // Subset evaluation through the public entry point agrees as well.
    for (Measure m : kAllMeasures) {
      const FullReport one =
          Evaluate(g.pair, Engine::kSinglePass, MeasureSet::Of(m));
      ExpectSameBits(*one.triple(m), *all.triple(m), MeasureName(m).data());
    }
    if (HasFailure()) FAIL() << "seed " << seed;
  }
}

TEST(PropertyTest, ScoresStayInUnitInterval) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const FullReport r = single_pass::EvalAll(RandomPair(seed).pair);
    for (Measure m : kAllMeasures) {
      const MetricTriple& t = *r.triple(m);
      for (double v : {t.recall, t.precision, t.combined}) {
        ASSERT_GE(v, 0.0) << MeasureName(m);
        ASSERT_LE(v, 1.0) << MeasureName(m);
      }
    }
    ASSERT_GE(r.se_le->split_error, 0.0);
    ASSERT_LE(r.se_le->split_error, 1.0);
    ASSERT_GE(r.se_le->lump_error, 0.0);
    ASSERT_LE(r.se_le->lump_error, 1.0);
  }
}

TEST(PropertyTest, PerfectPredictionIsFixedPoint) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const EvalPair same = Rebuild(Copy(g.pair.truth()), Copy(g.pair.truth()));
    for (Engine e : {Engine::kSinglePass, Engine::kOracle}) {
      const FullReport r = Evaluate(same, e, MeasureSet::All());
      for (Measure m : kAllMeasures) {
        const MetricTriple& t = *r.triple(m);
        ASSERT_EQ(t.recall, 1.0);
        ASSERT_EQ(t.precision, 1.0);
        ASSERT_EQ(t.combined, 1.0);
      }
      ASSERT_EQ(r.se_le->split_error, 0.0);
      ASSERT_EQ(r.se_le->lump_error, 0.0);
    }
  }
}

TEST(PropertyTest, SwappingSidesSwapsRecallAndPrecision) {
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const FullReport a = single_pass::EvalAll(g.pair);
    const FullReport b = single_pass::EvalAll(
        Rebuild(Copy(g.pair.predicted()), Copy(g.pair.truth())));
    ASSERT_EQ(a.cluster_f->recall, b.cluster_f->precision);
    ASSERT_EQ(a.cluster_f->precision, b.cluster_f->recall);
    ASSERT_EQ(a.cluster_f->combined, b.cluster_f->combined);
    ASSERT_EQ(a.pairwise->recall, b.pairwise->precision);
    ASSERT_EQ(a.pairwise->precision, b.pairwise->recall);
    ASSERT_EQ(a.pairwise->combined, b.pairwise->combined);
    ASSERT_NEAR(a.k_metric->recall, b.k_metric->precision, kTol);
    ASSERT_NEAR(a.k_metric->precision, b.k_metric->recall, kTol);
    ASSERT_NEAR(a.k_metric->combined, b.k_metric->combined, kTol);
    ASSERT_NEAR(a.b_cubed->recall, b.b_cubed->precision, kTol);
    ASSERT_NEAR(a.b_cubed->precision, b.b_cubed->recall, kTol);
    ASSERT_NEAR(a.b_cubed->combined, b.b_cubed->combined, kTol);
  }
}

// On any pair, splitting a predicted cluster can only lose shared pairs and
// merging two can only gain them.
TEST(PropertyTest, SharedPairsMoveWithSplitsAndMerges) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const PairwiseResult base = single_pass::EvalPairwise(g.pair);
    synth::Rng rng(seed);
    const std::vector<Cluster> predicted = Copy(g.pair.predicted());
    const std::size_t pick = rng.Below(predicted.size());
    if (predicted[pick].size() >= 2) {
      std::vector<Cluster> split = predicted;
      synth::SplitCluster(split, pick, 1 + rng.Below(split[pick].size() - 1));
      const PairwiseResult s = single_pass::EvalPairwise(
          Rebuild(Copy(g.pair.truth()), std::move(split)));
      ASSERT_LE(s.totals.intersection_pairs, base.totals.intersection_pairs);
      ASSERT_LE(s.scores.recall, base.scores.recall);
    }
    if (predicted.size() >= 2) {
      std::vector<Cluster> merged = predicted;
      synth::MergeClusters(merged, 0, 1 + rng.Below(merged.size() - 1));
      const PairwiseResult m = single_pass::EvalPairwise(
          Rebuild(Copy(g.pair.truth()), std::move(merged)));
      ASSERT_GE(m.totals.intersection_pairs, base.totals.intersection_pairs);
      ASSERT_GE(m.scores.recall, base.scores.recall);
    }
  }
}

// Starting from a perfect prediction, each further split lowers recall and
// keeps precision at 1; each further merge of whole truth clusters lowers
// precision and keeps recall at 1.
TEST(PropertyTest, DegradationFromPerfectIsMonotone) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    synth::Rng rng(seed + 1);

    std::vector<Cluster> split = Copy(g.pair.truth());
    double last = 1.0;
    for (int step = 0; step < 10; ++step) {
      std::vector<std::size_t> splittable;
      for (std::size_t i = 0; i < split.size(); ++i) {
        if (split[i].size() >= 2) splittable.push_back(i);
      }
      if (splittable.empty()) break;
      const std::size_t i = splittable[rng.Below(splittable.size())];
      synth::SplitCluster(split, i, 1 + rng.Below(split[i].size() - 1));
      const PairwiseResult r = single_pass::EvalPairwise(
          Rebuild(Copy(g.pair.truth()), split));
      ASSERT_EQ(r.scores.precision, 1.0);
      ASSERT_LT(r.scores.recall, last);
      last = r.scores.recall;
    }

    std::vector<Cluster> merged = Copy(g.pair.truth());
    last = 1.0;
    while (merged.size() >= 2) {
      const std::size_t from = 1 + rng.Below(merged.size() - 1);
      const std::size_t into = rng.Below(from);
      synth::MergeClusters(merged, into, from);
      const PairwiseResult r = single_pass::EvalPairwise(
          Rebuild(Copy(g.pair.truth()), merged));
      ASSERT_EQ(r.scores.recall, 1.0);
      ASSERT_LE(r.scores.precision, last);
      last = r.scores.precision;
    }
    if (g.pair.truth().size() > 1) {
      ASSERT_LT(last, 1.0);
    }
  }
}

TEST(PropertyTest, PairCountMatchesEnumeration) {
  std::uint64_t running = 0;  // 0 + 1 + ... + (k - 1)
  for (std::uint64_t k = 0; k <= 1000; ++k) {
    ASSERT_EQ(single_pass::PairCount(k), running) << k;
    if (k <= 200 && k > 0) {
      Cluster c(k);
      for (std::uint32_t i = 0; i < k; ++i) c[i] = InstanceId{i};
      std::uint64_t budget = kDefaultPairBudget;
      ASSERT_EQ(oracle::PairSet::FromClusters(
                    Clustering({std::move(c)}, Role::kTruth), &budget)
                    .size(),
                running);
    }
    running += k;
  }
}

TEST(PropertyTest, LenientWithoutExtrasEqualsStrict) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    const EvalPair lenient = Rebuild(Copy(g.pair.truth()),
                                     Copy(g.pair.predicted()),
                                     CoverageMode::kLenient);
    ASSERT_EQ(lenient.extra_predicted(), 0u);
    ASSERT_EQ(ReportDistance(single_pass::EvalAll(lenient),
                             single_pass::EvalAll(g.pair)),
              0.0);
  }
}

TEST(PropertyTest, LenientExtrasAgreeAcrossEngines) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const synth::SyntheticPair g = RandomPair(seed);
    std::vector<Cluster> predicted = Copy(g.pair.predicted());
    synth::Rng rng(seed + 17);
    const auto n = static_cast<std::uint32_t>(g.pair.truth().n_instances());
    const std::uint64_t extras = 1 + rng.Below(5);
    for (std::uint32_t e = 0; e < extras; ++e) {
      const InstanceId id{n + e};
      if (rng.Bernoulli(0.5)) {
        predicted.push_back({id});
      } else {
        predicted[rng.Below(predicted.size())].push_back(id);
      }
    }
    const EvalPair pair = Rebuild(Copy(g.pair.truth()), std::move(predicted),
                                  CoverageMode::kLenient);
    ASSERT_EQ(pair.extra_predicted(), extras);
    const FullReport fast = single_pass::EvalAll(pair);
    ASSERT_LE(ReportDistance(fast, oracle::OracleAll(pair, MeasureSet::All())),
              kTol)
        << "seed " << seed;
    ASSERT_FALSE(fast.flags.empty());
  }
}

}  // namespace
}  // namespace clustereval
