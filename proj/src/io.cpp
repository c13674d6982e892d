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

#include "clustereval/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace clustereval::io {

namespace {

bool IsBlank(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

struct Line {
  std::uint64_t number = 0;  // 1-based
  std::string_view text;     // without the line terminator
};

// Calls fn(Line) for each data line.
template <typename Fn>
void ForEachDataLine(std::string_view text, Fn&& fn) {
  std::uint64_t number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && IsBlank(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    fn(Line{number, line});
  }
}

[[noreturn]] void ThrowParse(const Line& line, std::size_t column,
                             const std::string& message) {
  throw Error(Errc::kParse, "line " + std::to_string(line.number) +
                                ", column " + std::to_string(column + 1) +
                                ": " + message);
}

class ClusteringBuilder {
 public:
  ClusteringBuilder(Role role, Interner& names) : role_(role), names_(names) {}

  void Add(std::size_t cluster, std::string_view label, std::uint64_t line) {
    const InstanceId id = names_.Intern(label);
    if (id.value >= first_line_.size()) first_line_.resize(id.value + 1, 0);
    if (first_line_[id.value] != 0) {
      throw Error(Errc::kDuplicateInstance,
                  std::string(RoleName(role_)) + " instance '" +
                      std::string(label) + "' on line " +
                      std::to_string(line) + " already appears on line " +
                      std::to_string(first_line_[id.value]));
    }
    first_line_[id.value] = line;
    if (cluster >= clusters_.size()) clusters_.resize(cluster + 1);
    clusters_[cluster].push_back(id);
  }

  std::size_t cluster_count() const { return clusters_.size(); }

  Clustering Build() { return Clustering(std::move(clusters_), role_); }

 private:
  Role role_;
  Interner& names_;
  std::vector<Cluster> clusters_;
  std::vector<std::uint64_t> first_line_;  // by dense id; 0 = unseen
};

void ParseClusterLines(std::string_view text, ClusteringBuilder& builder) {
  ForEachDataLine(text, [&](const Line& line) {
    const std::size_t cluster = builder.cluster_count();
    std::size_t i = 0;
    while (i < line.text.size()) {
      while (i < line.text.size() && IsBlank(line.text[i])) ++i;
      const std::size_t begin = i;
      while (i < line.text.size() && !IsBlank(line.text[i])) ++i;
      if (i > begin) {
        builder.Add(cluster, line.text.substr(begin, i - begin), line.number);
      }
    }
  });
}

void ParseMembershipPairs(std::string_view text, ClusteringBuilder& builder) {
  std::unordered_map<std::string, std::size_t> cluster_of;
  ForEachDataLine(text, [&](const Line& line) {
    const std::size_t tab = line.text.find('\t');
    if (tab == std::string_view::npos) {
      ThrowParse(line, line.text.size(),
                 "expected '<instance id><TAB><cluster label>'");
    }
    std::string_view id = line.text.substr(0, tab);
    std::string_view label = line.text.substr(tab + 1);
    while (!label.empty() && IsBlank(label.back())) label.remove_suffix(1);
    if (id.empty()) ThrowParse(line, 0, "empty instance id");
    for (std::size_t c = 0; c < id.size(); ++c) {
      if (IsBlank(id[c])) ThrowParse(line, c, "whitespace in instance id");
    }
    if (label.empty()) ThrowParse(line, tab + 1, "empty cluster label");
    if (const std::size_t extra = label.find('\t');
        extra != std::string_view::npos) {
      ThrowParse(line, tab + 1 + extra, "more than one TAB on line");
    }
    auto [it, inserted] =
        cluster_of.try_emplace(std::string(label), cluster_of.size());
    builder.Add(it->second, id, line.number);
  });
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

constexpr int kScoreDecimals = 12;
constexpr int kTimingDecimals = 9;

const char* MeanName(MeanKind kind) {
  return kind == MeanKind::kHarmonic ? "harmonic" : "geometric";
}

void EmitTripleFields(std::ostream& out, const MetricTriple& t,
                      const char* indent) {
  out << indent << "\"recall\": " << FormatFixed(t.recall, kScoreDecimals)
      << ",\n"
      << indent << "\"precision\": "
      << FormatFixed(t.precision, kScoreDecimals) << ",\n"
      << indent << "\"combined\": " << FormatFixed(t.combined, kScoreDecimals)
      << ",\n"
      << indent << "\"mean\": \"" << MeanName(t.mean_kind) << "\"\n";
}

using nlohmann::json;

const json& Require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(Errc::kParse, std::string("report: missing field '") + key +
                                  "'");
  }
  return obj.at(key);
}

MetricTriple ReadTriple(const json& obj) {
  MetricTriple t;
  t.recall = Require(obj, "recall").get<double>();
  t.precision = Require(obj, "precision").get<double>();
  t.combined = Require(obj, "combined").get<double>();
  const std::string mean = Require(obj, "mean").get<std::string>();
  if (mean == "harmonic") {
    t.mean_kind = MeanKind::kHarmonic;
  } else if (mean == "geometric") {
    t.mean_kind = MeanKind::kGeometric;
  } else {
    throw Error(Errc::kParse, "report: unknown mean '" + mean + "'");
  }
  return t;
}

}  // namespace

std::optional<ClusteringFormat> ClusteringFormatFromName(
    std::string_view name) {
  if (name == "auto") return ClusteringFormat::kAuto;
  if (name == "clusters") return ClusteringFormat::kClusterLines;
  if (name == "pairs") return ClusteringFormat::kMembershipPairs;
  return std::nullopt;
}

std::string_view ClusteringFormatName(ClusteringFormat format) {
  switch (format) {
    case ClusteringFormat::kAuto: return "auto";
    case ClusteringFormat::kClusterLines: return "clusters";
    case ClusteringFormat::kMembershipPairs: return "pairs";
  }
  return "auto";
}

ClusteringFormat DetectFormat(std::string_view text) {
  std::optional<ClusteringFormat> found;
  ForEachDataLine(text, [&](const Line& line) {
    if (found) return;
    found = line.text.find('\t') != std::string_view::npos
                ? ClusteringFormat::kMembershipPairs
                : ClusteringFormat::kClusterLines;
  });
  return found.value_or(ClusteringFormat::kClusterLines);
}

Clustering ParseClustering(std::string_view text, ClusteringFormat format,
                           Role role, Interner& names) {
  if (format == ClusteringFormat::kAuto) format = DetectFormat(text);
  ClusteringBuilder builder(role, names);
  if (format == ClusteringFormat::kMembershipPairs) {
    ParseMembershipPairs(text, builder);
  } else {
    ParseClusterLines(text, builder);
  }
  return builder.Build();
}

Clustering ReadClusteringFile(const std::string& path, ClusteringFormat format,
                              Role role, Interner& names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::kIo, "error reading '" + path + "'");
  try {
    return ParseClustering(buf.str(), format, role, names);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void WriteClustering(std::ostream& out, const Clustering& clustering,
                     const Interner& names, ClusteringFormat format) {
  for (std::size_t i = 0; i < clustering.size(); ++i) {
    const Cluster& c = clustering.cluster(i);
    if (format == ClusteringFormat::kMembershipPairs) {
      for (InstanceId id : c) {
        out << names.Label(id) << "\tc" << (i + 1) << '\n';
      }
    } else {
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0) out << ' ';
        out << names.Label(c[k]);
      }
      out << '\n';
    }
  }
}

std::string RenderMachine(const ReportDocument& doc) {
  const FullReport& r = doc.report;
  std::ostringstream out;
  out << "{\n"
      << "  \"schema_version\": " << doc.schema_version << ",\n"
      << "  \"engine\": \"" << EngineName(doc.engine) << "\",\n"
      << "  \"version\": " << json(doc.version).dump() << ",\n"
      << "  \"measures\": {";
  bool first = true;
  for (Measure m : kAllMeasures) {
    if (r.triple(m) == nullptr) continue;
    out << (first ? "\n" : ",\n") << "    \"" << MeasureName(m) << "\": {\n";
    first = false;
    if (m == Measure::kSeLe) {
      out << "      \"se\": "
          << FormatFixed(r.se_le->split_error, kScoreDecimals) << ",\n"
          << "      \"le\": "
          << FormatFixed(r.se_le->lump_error, kScoreDecimals) << ",\n";
      EmitTripleFields(out, r.se_le->converted, "      ");
    } else {
      EmitTripleFields(out, *r.triple(m), "      ");
    }
    out << "    }";
  }
  out << (first ? "},\n" : "\n  },\n");

  const Stats& s = r.stats;
  out << "  \"stats\": {\n"
      << "    \"truth_clusters\": " << s.truth_clusters << ",\n"
      << "    \"predicted_clusters\": " << s.predicted_clusters << ",\n"
      << "    \"instances\": " << s.instances << ",\n"
      << "    \"extra_predicted\": " << s.extra_predicted;
  if (s.pairs) {
    out << ",\n    \"truth_pairs\": " << s.pairs->truth_pairs << ",\n"
        << "    \"predicted_pairs\": " << s.pairs->predicted_pairs << ",\n"
        << "    \"intersection_pairs\": " << s.pairs->intersection_pairs;
  }
  out << "\n  },\n  \"flags\": [";
  for (std::size_t i = 0; i < r.flags.size(); ++i) {
    out << (i == 0 ? "\n    " : ",\n    ") << json(r.flags[i]).dump();
  }
  out << (r.flags.empty() ? "],\n" : "\n  ],\n");
  out << "  \"timing\": {\n"
      << "    \"evaluation_seconds\": "
      << FormatFixed(doc.evaluation_seconds, kTimingDecimals) << "\n"
      << "  }\n"
      << "}\n";
  return out.str();
}

ReportDocument ParseMachine(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::kParse, std::string("report: ") + e.what());
  }
  try {
    ReportDocument doc;
    doc.schema_version = Require(root, "schema_version").get<int>();
    if (doc.schema_version != kReportSchemaVersion) {
      throw Error(Errc::kParse, "report: unsupported schema_version " +
                                    std::to_string(doc.schema_version));
    }
    const std::string engine = Require(root, "engine").get<std::string>();
    const auto parsed_engine = EngineFromName(engine);
    if (!parsed_engine) {
      throw Error(Errc::kParse, "report: unknown engine '" + engine + "'");
    }
    doc.engine = *parsed_engine;
    doc.version = Require(root, "version").get<std::string>();

    FullReport& r = doc.report;
    const json& measures = Require(root, "measures");
    for (auto it = measures.begin(); it != measures.end(); ++it) {
      const auto m = MeasureFromName(it.key());
      if (!m) {
        throw Error(Errc::kParse, "report: unknown measure '" + it.key() + "'");
      }
      switch (*m) {
        case Measure::kClusterF: r.cluster_f = ReadTriple(*it); break;
        case Measure::kKMetric: r.k_metric = ReadTriple(*it); break;
        case Measure::kBCubed: r.b_cubed = ReadTriple(*it); break;
        case Measure::kPairwise: r.pairwise = ReadTriple(*it); break;
        case Measure::kSeLe:
          r.se_le = SeLeResult{Require(*it, "se").get<double>(),
                               Require(*it, "le").get<double>(),
                               ReadTriple(*it)};
          break;
      }
    }

    const json& stats = Require(root, "stats");
    r.stats.truth_clusters =
        Require(stats, "truth_clusters").get<std::uint64_t>();
    r.stats.predicted_clusters =
        Require(stats, "predicted_clusters").get<std::uint64_t>();
    r.stats.instances = Require(stats, "instances").get<std::uint64_t>();
    r.stats.extra_predicted =
        Require(stats, "extra_predicted").get<std::uint64_t>();
    if (stats.contains("truth_pairs")) {
      r.stats.pairs = PairTotals{
          Require(stats, "truth_pairs").get<std::uint64_t>(),
          Require(stats, "predicted_pairs").get<std::uint64_t>(),
          Require(stats, "intersection_pairs").get<std::uint64_t>()};
    }
    for (const json& flag : Require(root, "flags")) {
      r.flags.push_back(flag.get<std::string>());
    }
    doc.evaluation_seconds =
        Require(Require(root, "timing"), "evaluation_seconds").get<double>();
    return doc;
  } catch (const json::exception& e) {
    throw Error(Errc::kParse, std::string("report: ") + e.what());
  }
}

std::string RenderTable(const FullReport& r, int decimals) {
  std::ostringstream out;
  const int width = decimals + 4;
  auto row = [&](const char* name, const MetricTriple& t, std::string note) {
    out << std::left << std::setw(12) << name << std::right
        << std::setw(width) << FormatFixed(t.recall, decimals)
        << std::setw(width + 2) << FormatFixed(t.precision, decimals)
        << std::setw(width + 2) << FormatFixed(t.combined, decimals);
    if (!note.empty()) out << "  " << note;
    out << '\n';
  };
  out << std::left << std::setw(12) << "Measure" << std::right
      << std::setw(width) << "Recall" << std::setw(width + 2) << "Precision"
      << std::setw(width + 2) << "F" << '\n';
  if (r.cluster_f) row("Cluster-F", *r.cluster_f, "");
  if (r.k_metric) row("K-metric", *r.k_metric, "(AAP, ACP, K)");
  if (r.se_le) {
    row("SE & LE", r.se_le->converted,
        "(SE " + FormatFixed(r.se_le->split_error, decimals) + ", LE " +
            FormatFixed(r.se_le->lump_error, decimals) + ")");
  }
  if (r.pairwise) row("Pairwise-F", *r.pairwise, "");
  if (r.b_cubed) row("B-cubed", *r.b_cubed, "");

  const Stats& s = r.stats;
  out << "\ntruth clusters " << s.truth_clusters << ", predicted clusters "
      << s.predicted_clusters << ", instances " << s.instances;
  if (s.extra_predicted > 0) {
    out << ", extra predicted " << s.extra_predicted;
  }
  out << '\n';
  if (s.pairs) {
    out << "pairs: truth " << s.pairs->truth_pairs << ", predicted "
        << s.pairs->predicted_pairs << ", intersection "
        << s.pairs->intersection_pairs << '\n';
  }
  for (const std::string& flag : r.flags) out << "flag: " << flag << '\n';
  return out.str();
}

}  // namespace clustereval::io
