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

#include "clustereval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace clustereval::synth {

void CheckConfig(const SynthConfig& config) {
  if (config.n_instances == 0) {
    throw Error(Errc::kInfeasibleConfig, "n_instances must be positive");
  }
  if (config.n_truth_clusters == 0) {
    throw Error(Errc::kInfeasibleConfig, "n_truth_clusters must be positive");
  }
  if (config.n_truth_clusters > config.n_instances) {
    throw Error(Errc::kInfeasibleConfig,
                "n_truth_clusters (" + std::to_string(config.n_truth_clusters) +
                    ") exceeds n_instances (" +
                    std::to_string(config.n_instances) + ")");
  }
  if (config.n_instances >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::kInvalidArgument, "n_instances too large");
  }
  if (!(config.size_skew >= 0.0) || !std::isfinite(config.size_skew)) {
    throw Error(Errc::kInvalidArgument, "size_skew must be finite and >= 0");
  }
  auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!rate_ok(config.split_rate) || !rate_ok(config.merge_rate)) {
    throw Error(Errc::kInvalidArgument, "rates must lie in [0, 1]");
  }
}

std::uint64_t Rng::Below(std::uint64_t bound) {
  // Accept only draws below the largest multiple of bound.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = Next();
    if (x >= limit) return x % bound;
  }
}

std::vector<std::uint64_t> ClusterSizes(std::uint64_t n, std::uint64_t k,
                                        double skew) {
  std::vector<std::uint64_t> sizes(k, 1);
  const std::uint64_t rest = n - k;
  if (rest == 0) return sizes;

  std::vector<double> weight(k);
  for (std::uint64_t r = 0; r < k; ++r) {
    weight[r] = skew == 0.0 ? 1.0 : std::pow(static_cast<double>(r + 1), -skew);
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  std::vector<double> frac(k);
  std::uint64_t assigned = 0;
  for (std::uint64_t r = 0; r < k; ++r) {
    const double quota = static_cast<double>(rest) * weight[r] / total;
    const double whole = std::floor(quota);
    sizes[r] += static_cast<std::uint64_t>(whole);
    assigned += static_cast<std::uint64_t>(whole);
    frac[r] = quota - whole;
  }

  std::vector<std::uint64_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  if (assigned < rest) {
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return frac[a] > frac[b];
    });
    for (std::uint64_t i = 0; assigned < rest; ++i, ++assigned) {
      ++sizes[order[i % k]];
    }
  } else {
    // Rounding overshoot: take back from the smallest remainders.
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return frac[a] < frac[b];
    });
    for (std::uint64_t i = 0; assigned > rest; ++i) {
      const std::uint64_t r = order[i % k];
      if (sizes[r] > 1) {
        --sizes[r];
        --assigned;
      }
    }
  }
  return sizes;
}

void SplitCluster(std::vector<Cluster>& clusters, std::size_t index,
                  std::size_t cut) {
  Cluster& c = clusters.at(index);
  if (cut == 0 || cut >= c.size()) {
    throw Error(Errc::kInvalidArgument, "split point must leave both parts "
                                        "nonempty");
  }
  Cluster tail(c.begin() + static_cast<std::ptrdiff_t>(cut), c.end());
  c.resize(cut);
  clusters.insert(clusters.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                  std::move(tail));
}

void MergeClusters(std::vector<Cluster>& clusters, std::size_t into,
                   std::size_t from) {
  if (into == from || into >= clusters.size() || from >= clusters.size()) {
    throw Error(Errc::kInvalidArgument, "bad merge indices");
  }
  Cluster moved = std::move(clusters[from]);
  clusters[into].insert(clusters[into].end(), moved.begin(), moved.end());
  clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(from));
}

std::vector<Cluster> GenerateTruthClusters(const SynthConfig& config,
                                           Rng& rng) {
  CheckConfig(config);
  const std::uint64_t n = config.n_instances;
  const std::uint64_t k = config.n_truth_clusters;
  std::vector<std::uint64_t> sizes = ClusterSizes(n, k, config.size_skew);

  // Fisher-Yates over cluster order, then over instance ids.
  for (std::uint64_t i = k; i > 1; --i) {
    std::swap(sizes[i - 1], sizes[rng.Below(i)]);
  }
  std::vector<InstanceId> ids(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    ids[i] = InstanceId{static_cast<std::uint32_t>(i)};
  }
  for (std::uint64_t i = n; i > 1; --i) {
    std::swap(ids[i - 1], ids[rng.Below(i)]);
  }

  std::vector<Cluster> clusters;
  clusters.reserve(k);
  auto next = ids.begin();
  for (std::uint64_t size : sizes) {
    clusters.emplace_back(next, next + static_cast<std::ptrdiff_t>(size));
    next += static_cast<std::ptrdiff_t>(size);
  }
  return clusters;
}

std::vector<Cluster> Perturb(const std::vector<Cluster>& truth,
                             double split_rate, double merge_rate, Rng& rng) {
  std::vector<Cluster> split;
  split.reserve(truth.size());
  for (const Cluster& c : truth) {
    const bool cut_here = rng.Bernoulli(split_rate);
    if (cut_here && c.size() >= 2) {
      const auto cut = static_cast<std::ptrdiff_t>(1 + rng.Below(c.size() - 1));
      split.emplace_back(c.begin(), c.begin() + cut);
      split.emplace_back(c.begin() + cut, c.end());
    } else {
      split.push_back(c);
    }
  }

  // alive holds the indices of clusters not yet absorbed; pos inverts it.
  const std::size_t count = split.size();
  std::vector<std::size_t> alive(count), pos(count);
  std::iota(alive.begin(), alive.end(), 0);
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<char> dead(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (dead[i] || alive.size() < 2) continue;
    if (!rng.Bernoulli(merge_rate)) continue;
    std::size_t j = alive[rng.Below(alive.size() - 1)];
    if (j == i) j = alive.back();
    split[i].insert(split[i].end(), split[j].begin(), split[j].end());
    split[j].clear();
    dead[j] = 1;
    const std::size_t hole = pos[j];
    alive[hole] = alive.back();
    pos[alive[hole]] = hole;
    alive.pop_back();
  }

  std::vector<Cluster> predicted;
  predicted.reserve(alive.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (!dead[i]) predicted.push_back(std::move(split[i]));
  }
  return predicted;
}

SyntheticPair Generate(const SynthConfig& config) {
  CheckConfig(config);
  Rng rng(config.seed);
  std::vector<Cluster> truth = GenerateTruthClusters(config, rng);
  std::vector<Cluster> predicted =
      Perturb(truth, config.split_rate, config.merge_rate, rng);
  SyntheticPair out{Interner::Sequential(config.n_instances), {}};
  out.pair = Validate(Clustering(std::move(truth), Role::kTruth),
                      Clustering(std::move(predicted), Role::kPredicted),
                      CoverageMode::kStrict, &out.names);
  return out;
}

SynthConfig RandomConfig(std::uint64_t seed, std::uint64_t max_n) {
  if (max_n == 0) throw Error(Errc::kInvalidArgument, "max_n must be positive");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  SynthConfig c;
  c.n_instances = 1 + rng.Below(max_n);
  c.n_truth_clusters = 1 + rng.Below(c.n_instances);
  c.size_skew = 2.0 * rng.Unit();
  c.split_rate = rng.Unit();
  c.merge_rate = rng.Unit();
  c.seed = rng.Next();
  return c;
}

}  // namespace clustereval::synth
