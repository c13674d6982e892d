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

// Seeded generator of truth clusterings and perturbed predictions.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Bounded integers and unit reals are derived from its raw
// 64-bit output here (not through <random> distributions, whose algorithms
// are implementation-defined), so a (config, seed) pair produces the same
// partitions on every conforming platform.

#include <cstdint>
#include <random>
#include <vector>

#include "clustereval/model.hpp"

namespace clustereval::synth {

struct SynthConfig {
  std::uint64_t n_instances = 0;
  std::uint64_t n_truth_clusters = 0;
  // 0 gives near-equal sizes; larger values concentrate instances in a few
  // large clusters (Zipf exponent).
  double size_skew = 0.0;
  double split_rate = 0.0;  // probability a truth cluster is cut in two
  double merge_rate = 0.0;  // probability a predicted cluster absorbs another
  std::uint64_t seed = 0;
};

// Throws Error(kInfeasibleConfig) or Error(kInvalidArgument).
void CheckConfig(const SynthConfig& config);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t Below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double Unit() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Cluster sizes summing to n, each at least 1, proportional to a Zipf law
// with exponent `skew` (largest-remainder rounding, ties to lower rank).
std::vector<std::uint64_t> ClusterSizes(std::uint64_t n, std::uint64_t k,
                                        double skew);

// Cuts clusters[index] after `cut` members; the tail becomes a new cluster
// right after it. Requires 0 < cut < size.
void SplitCluster(std::vector<Cluster>& clusters, std::size_t index,
                  std::size_t cut);

// Appends clusters[from] to clusters[into] and removes clusters[from].
void MergeClusters(std::vector<Cluster>& clusters, std::size_t into,
                   std::size_t from);

std::vector<Cluster> GenerateTruthClusters(const SynthConfig& config,
                                           Rng& rng);

// Applies random splits, then random merges.
std::vector<Cluster> Perturb(const std::vector<Cluster>& truth,
                             double split_rate, double merge_rate, Rng& rng);

struct SyntheticPair {
  Interner names;  // labels "1".."N"
  EvalPair pair;   // strict coverage
};

SyntheticPair Generate(const SynthConfig& config);

// A random small configuration for property tests: n in [1, max_n], any
// cluster count, skew in [0, 2), rates in [0, 1).
SynthConfig RandomConfig(std::uint64_t seed, std::uint64_t max_n);

}  // namespace clustereval::synth
