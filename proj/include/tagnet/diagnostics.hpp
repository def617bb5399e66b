#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tagnet/graph.hpp"
#include "tagnet/metrics.hpp"

namespace tagnet::diagnostics {

// Expected path length and clustering of an Erdős–Rényi graph with the same
// N and mean degree.
struct ErBaseline {
  double l_random = 0;  // ln N / ln <k>
  double c_random = 0;  // <k> / N
};

// Throws DegenerateError unless n > 1 and avg_degree > 1.
ErBaseline er_baseline(double n, double avg_degree);

struct SmallWorldThresholds {
  double max_l_ratio = 2.0;   // l / l_random must not exceed this
  double min_c_ratio = 10.0;  // C / C_random must reach this
};

struct ScaleFreeThresholds {
  double min_abs_r = 0.9;
};

struct SmallWorldVerdict {
  bool small_world = false;
  double l_ratio = 0;
  double c_ratio = 0;
  SmallWorldThresholds thresholds;
};

struct ScaleFreeVerdict {
  bool scale_free = false;
  double gamma = 0;
  double abs_r = 0;
  ScaleFreeThresholds thresholds;
};

SmallWorldVerdict small_world_verdict(double path_length, double clustering, const ErBaseline& baseline,
                                      const SmallWorldThresholds& thresholds = {});

ScaleFreeVerdict scale_free_verdict(const metrics::PowerLawFit& fit,
                                    const ScaleFreeThresholds& thresholds = {});

struct RankedTag {
  std::size_t degree;
  std::string tag;
  bool operator==(const RankedTag&) const = default;
};

// Highest-degree tags, ties by ascending tag string, at most min(k, N) rows.
std::vector<RankedTag> top_k_degree(const TagGraph& graph, const TagTable& table, std::size_t k);

struct AnalysisOptions {
  metrics::PathLengthOptions path_length;
  metrics::LowDegreePolicy clustering_policy = metrics::LowDegreePolicy::exclude;
  std::size_t k_min = 1;
  SmallWorldThresholds small_world;
  ScaleFreeThresholds scale_free;
  std::size_t top_k = 20;
};

struct NetworkSummary {
  metrics::NetworkStats stats;
  std::optional<metrics::DegreeDistribution> distribution;
  std::optional<ErBaseline> baseline;
  std::optional<metrics::PowerLawFit> fit;
  std::optional<metrics::PowerLawFit> ccdf_fit;
  std::optional<SmallWorldVerdict> small_world;
  std::optional<ScaleFreeVerdict> scale_free;
  std::vector<RankedTag> top_tags;
  AnalysisOptions options;
  std::vector<std::string> warnings;  // includes stats.warnings
};

// Full analysis. Statistics that cannot be computed on a degenerate graph
// are left empty with a warning; nothing here throws for small inputs.
NetworkSummary analyze(const TagGraph& graph, const TagTable& table, const AnalysisOptions& options = {});

}  // namespace tagnet::diagnostics
