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

#include "clustereval/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace clustereval {

const char* ErrcName(Errc code) {
  switch (code) {
    case Errc::kParse: return "ParseError";
    case Errc::kIo: return "IoError";
    case Errc::kDuplicateInstance: return "DuplicateInstance";
    case Errc::kEmptyCluster: return "EmptyCluster";
    case Errc::kEmptyClustering: return "EmptyClustering";
    case Errc::kMissingFromPredicted: return "MissingFromPredicted";
    case Errc::kExtraInPredicted: return "ExtraInPredicted";
    case Errc::kUnindexedInstance: return "UnindexedInstance";
    case Errc::kPairBudgetExceeded: return "PairBudgetExceeded";
    case Errc::kInfeasibleConfig: return "InfeasibleConfig";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const char* RoleName(Role role) {
  return role == Role::kTruth ? "truth" : "predicted";
}

InstanceId Interner::Intern(std::string_view label) {
  if (auto it = index_.find(label); it != index_.end()) {
    return InstanceId{it->second};
  }
  if (labels_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::kInvalidArgument, "too many distinct instance ids");
  }
  const auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return InstanceId{id};
}

bool Interner::Find(std::string_view label, InstanceId* id) const {
  auto it = index_.find(label);
  if (it == index_.end()) return false;
  if (id != nullptr) *id = InstanceId{it->second};
  return true;
}

Interner Interner::Sequential(std::size_t n) {
  Interner names;
  names.labels_.reserve(n);
  names.index_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) names.Intern(std::to_string(k + 1));
  return names;
}

namespace {

std::string Describe(InstanceId id, const Interner* names) {
  if (names != nullptr && id.value < names->size()) {
    return "'" + names->Label(id) + "'";
  }
  return "#" + std::to_string(id.value);
}

}  // namespace

Clustering::Clustering(std::vector<Cluster> clusters, Role role)
    : clusters_(std::move(clusters)), role_(role) {
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    const Cluster& c = clusters_[i];
    if (c.empty()) {
      throw Error(Errc::kEmptyCluster, std::string(RoleName(role)) +
                                           " cluster " + std::to_string(i) +
                                           " is empty");
    }
    n_instances_ += c.size();
    for (InstanceId id : c) {
      if (id.value == std::numeric_limits<std::uint32_t>::max()) {
        throw Error(Errc::kInvalidArgument, "instance id out of range");
      }
      if (id.value + 1 > id_bound_) id_bound_ = id.value + 1;
    }
  }
}

void Clustering::CheckDisjoint(const Interner* names) const {
  std::vector<std::uint32_t> owner(id_bound_, 0);  // cluster index + 1
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    for (InstanceId id : clusters_[i]) {
      std::uint32_t& slot = owner[id.value];
      if (slot != 0) {
        std::string where =
            slot - 1 == i ? "twice in cluster " + std::to_string(i)
                          : "in clusters " + std::to_string(slot - 1) +
                                " and " + std::to_string(i);
        throw Error(Errc::kDuplicateInstance,
                    std::string(RoleName(role_)) + " instance " +
                        Describe(id, names) + " appears " + where);
      }
      slot = static_cast<std::uint32_t>(i + 1);
    }
  }
}

EvalPair Validate(std::shared_ptr<const Clustering> truth,
                  std::shared_ptr<const Clustering> predicted,
                  CoverageMode mode, const Interner* names) {
  if (!truth || !predicted) {
    throw Error(Errc::kInvalidArgument, "null clustering");
  }
  if (truth->empty()) {
    throw Error(Errc::kEmptyClustering, "truth clustering has no clusters");
  }
  if (predicted->empty()) {
    throw Error(Errc::kEmptyClustering, "predicted clustering has no clusters");
  }
  truth->CheckDisjoint(names);
  predicted->CheckDisjoint(names);

  const std::uint32_t bound =
      std::max(truth->id_bound(), predicted->id_bound());
  std::vector<char> in_predicted(bound, 0);
  for (const Cluster& c : predicted->clusters()) {
    for (InstanceId id : c) in_predicted[id.value] = 1;
  }
  for (const Cluster& c : truth->clusters()) {
    for (InstanceId id : c) {
      if (!in_predicted[id.value]) {
        throw Error(Errc::kMissingFromPredicted,
                    "truth instance " + Describe(id, names) +
                        " is missing from the predicted clustering");
      }
    }
  }

  // Disjointness plus truth ⊆ predicted makes the size difference the
  // number of predicted-only instances.
  const std::uint64_t extra = predicted->n_instances() - truth->n_instances();
  if (extra > 0 && mode == CoverageMode::kStrict) {
    std::vector<char> in_truth(bound, 0);
    for (const Cluster& c : truth->clusters()) {
      for (InstanceId id : c) in_truth[id.value] = 1;
    }
    for (const Cluster& c : predicted->clusters()) {
      for (InstanceId id : c) {
        if (!in_truth[id.value]) {
          throw Error(Errc::kExtraInPredicted,
                      "predicted instance " + Describe(id, names) +
                          " does not appear in the truth clustering (" +
                          std::to_string(extra) +
                          " extra instances; use lenient coverage to allow)");
        }
      }
    }
  }

  EvalPair pair;
  pair.truth_ = std::move(truth);
  pair.predicted_ = std::move(predicted);
  pair.coverage_ = mode;
  pair.extra_predicted_ = extra;
  pair.id_bound_ = bound;
  return pair;
}

double HarmonicMean(double recall, double precision) {
  const double sum = recall + precision;
  if (sum == 0.0) return 0.0;
  return 2.0 * recall * precision / sum;
}

double GeometricMean(double recall, double precision) {
  return std::sqrt(recall * precision);
}

SeLeResult MakeSeLe(double split_error, double lump_error) {
  return {split_error, lump_error,
          MetricTriple::Harmonic(1.0 - split_error, 1.0 - lump_error)};
}

}  // namespace clustereval
