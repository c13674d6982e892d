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

// Clustering data model shared by the single-pass evaluator, the oracles,
// the generator and the file formats.

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace clustereval {

enum class Errc {
  kParse,
  kIo,
  kDuplicateInstance,
  kEmptyCluster,
  kEmptyClustering,
  kMissingFromPredicted,
  kExtraInPredicted,
  kUnindexedInstance,
  kPairBudgetExceeded,
  kInfeasibleConfig,
  kInvalidArgument,
};

const char* ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Dense internal form of an instance identifier.
struct InstanceId {
  std::uint32_t value = 0;

  friend bool operator==(InstanceId, InstanceId) = default;
  friend auto operator<=>(InstanceId, InstanceId) = default;
};

// Bijection between raw text labels and dense ids 0..size()-1. One interner
// is shared by the truth and predicted clusterings of an evaluation.
class Interner {
 public:
  InstanceId Intern(std::string_view label);
  // Returns false if the label has never been interned.
  bool Find(std::string_view label, InstanceId* id) const;
  const std::string& Label(InstanceId id) const { return labels_.at(id.value); }
  std::size_t size() const { return labels_.size(); }

  // Interns "1".."n", so that label k+1 maps to dense id k.
  static Interner Sequential(std::size_t n);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> index_;
  std::vector<std::string> labels_;
};

enum class Role { kTruth, kPredicted };

const char* RoleName(Role role);

using Cluster = std::vector<InstanceId>;

// A list of nonempty clusters. Disjointness is established by
// CheckDisjoint(), which Validate() calls on both sides of a pair.
class Clustering {
 public:
  Clustering() = default;
  // Throws Error(kEmptyCluster) if any cluster is empty.
  Clustering(std::vector<Cluster> clusters, Role role);

  std::span<const Cluster> clusters() const { return clusters_; }
  const Cluster& cluster(std::size_t i) const { return clusters_[i]; }
  std::size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }
  std::uint64_t n_instances() const { return n_instances_; }
  Role role() const { return role_; }
  // One past the largest dense id used, 0 when empty.
  std::uint32_t id_bound() const { return id_bound_; }

  // Throws Error(kDuplicateInstance) naming the first repeated instance.
  void CheckDisjoint(const Interner* names = nullptr) const;

 private:
  std::vector<Cluster> clusters_;
  std::uint64_t n_instances_ = 0;
  std::uint32_t id_bound_ = 0;
  Role role_ = Role::kTruth;
};

enum class CoverageMode { kStrict, kLenient };

// A validated (truth, predicted) pair. Immutable; the clusterings are shared.
class EvalPair {
 public:
  const Clustering& truth() const { return *truth_; }
  const Clustering& predicted() const { return *predicted_; }
  const std::shared_ptr<const Clustering>& shared_truth() const {
    return truth_;
  }
  const std::shared_ptr<const Clustering>& shared_predicted() const {
    return predicted_;
  }
  CoverageMode coverage() const { return coverage_; }
  // Predicted instances absent from truth (always 0 in strict mode).
  std::uint64_t extra_predicted() const { return extra_predicted_; }
  std::uint32_t id_bound() const { return id_bound_; }

 private:
  friend EvalPair Validate(std::shared_ptr<const Clustering>,
                           std::shared_ptr<const Clustering>, CoverageMode,
                           const Interner*);

  std::shared_ptr<const Clustering> truth_;
  std::shared_ptr<const Clustering> predicted_;
  CoverageMode coverage_ = CoverageMode::kStrict;
  std::uint64_t extra_predicted_ = 0;
  std::uint32_t id_bound_ = 0;
};

// Checks both clusterings and their coverage relation. Errors:
// kEmptyClustering, kDuplicateInstance, kMissingFromPredicted (both modes),
// kExtraInPredicted (strict only). `names` is used for diagnostics only.
EvalPair Validate(std::shared_ptr<const Clustering> truth,
                  std::shared_ptr<const Clustering> predicted,
                  CoverageMode mode, const Interner* names = nullptr);

inline EvalPair Validate(Clustering truth, Clustering predicted,
                         CoverageMode mode, const Interner* names = nullptr) {
  return Validate(std::make_shared<const Clustering>(std::move(truth)),
                  std::make_shared<const Clustering>(std::move(predicted)),
                  mode, names);
}

enum class MeanKind { kHarmonic, kGeometric };

// 2rp/(r+p), 0 when r+p == 0.
double HarmonicMean(double recall, double precision);
double GeometricMean(double recall, double precision);

struct MetricTriple {
  double recall = 0.0;
  double precision = 0.0;
  double combined = 0.0;
  MeanKind mean_kind = MeanKind::kHarmonic;

  static MetricTriple Harmonic(double recall, double precision) {
    return {recall, precision, HarmonicMean(recall, precision),
            MeanKind::kHarmonic};
  }
  static MetricTriple Geometric(double recall, double precision) {
    return {recall, precision, GeometricMean(recall, precision),
            MeanKind::kGeometric};
  }

  friend bool operator==(const MetricTriple&, const MetricTriple&) = default;
};

// Best-matching predicted cluster for splitting/lumping error: the largest
// overlap wins; ties go to the smaller predicted cluster, then to the
// smaller cluster index. Returns true if candidate `a` beats `b`.
inline bool PreferredBestMatch(std::uint64_t overlap_a, std::uint64_t size_a,
                               std::uint64_t index_a, std::uint64_t overlap_b,
                               std::uint64_t size_b, std::uint64_t index_b) {
  if (overlap_a != overlap_b) return overlap_a > overlap_b;
  if (size_a != size_b) return size_a < size_b;
  return index_a < index_b;
}

struct SeLeResult {
  double split_error = 0.0;
  double lump_error = 0.0;
  MetricTriple converted;  // (1 - SE, 1 - LE, harmonic)

  friend bool operator==(const SeLeResult&, const SeLeResult&) = default;
};

struct PairTotals {
  std::uint64_t truth_pairs = 0;
  std::uint64_t predicted_pairs = 0;
  std::uint64_t intersection_pairs = 0;

  friend bool operator==(const PairTotals&, const PairTotals&) = default;
};

struct PairwiseResult {
  MetricTriple scores;
  PairTotals totals;
  // Set when a denominator was zero and the ratio was defined as 1.
  bool recall_degenerate = false;
  bool precision_degenerate = false;

  friend bool operator==(const PairwiseResult&,
                         const PairwiseResult&) = default;
};

// Converts a pair of error rates into (1 - SE, 1 - LE, harmonic).
SeLeResult MakeSeLe(double split_error, double lump_error);

}  // namespace clustereval
