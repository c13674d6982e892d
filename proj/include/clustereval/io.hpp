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

// Clustering files and report rendering.
//
// Clustering files are UTF-8 text, one record per line, in either of:
//   cluster lines     one cluster per line, ids separated by spaces/tabs
//   membership pairs  "<instance id>\t<cluster label>" per line
// Blank lines and lines whose first non-blank character is '#' are skipped.
// CRLF line endings are accepted. Auto-detection picks membership pairs iff
// the first data line contains a TAB.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "clustereval/model.hpp"
#include "clustereval/report.hpp"

namespace clustereval::io {

enum class ClusteringFormat { kAuto, kClusterLines, kMembershipPairs };

// "auto", "clusters", "pairs".
std::optional<ClusteringFormat> ClusteringFormatFromName(std::string_view name);
std::string_view ClusteringFormatName(ClusteringFormat format);

// Resolves kAuto against the first data line of `text`. Text without data
// lines resolves to kClusterLines.
ClusteringFormat DetectFormat(std::string_view text);

// Throws Error(kParse) with line and column, or Error(kDuplicateInstance)
// naming the id and both lines. Ids are interned into `names`.
Clustering ParseClustering(std::string_view text, ClusteringFormat format,
                           Role role, Interner& names);

// Throws Error(kIo) if the file cannot be read.
Clustering ReadClusteringFile(const std::string& path, ClusteringFormat format,
                              Role role, Interner& names);

// kAuto writes cluster lines. Membership labels are "c1", "c2", ...
void WriteClustering(std::ostream& out, const Clustering& clustering,
                     const Interner& names, ClusteringFormat format);

inline constexpr int kReportSchemaVersion = 1;

// Machine-readable report: a FullReport plus provenance.
struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  Engine engine = Engine::kSinglePass;
  std::string version;
  double evaluation_seconds = 0.0;
  FullReport report;
};

// JSON with a fixed key order; scores in fixed-point with 12 decimals.
std::string RenderMachine(const ReportDocument& doc);

// Inverse of RenderMachine. Throws Error(kParse).
ReportDocument ParseMachine(std::string_view json);

// One row per measure with Recall / Precision / F columns, then the
// statistics and any flags.
std::string RenderTable(const FullReport& report, int decimals = 4);

}  // namespace clustereval::io
