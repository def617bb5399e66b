#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tagnet/graph.hpp"

namespace tagnet::metrics {

// ---------------------------------------------------------------------------
// Degree distribution

struct DegreeBin {
  std::size_t degree;
  std::size_t count;
  double probability;  // count / N
  double ccdf;         // P(K >= degree)
};

// Histogram over all nodes, degree-0 nodes included; bins sorted by degree,
// only observed degrees present.
struct DegreeDistribution {
  std::size_t node_count = 0;
  std::vector<DegreeBin> bins;

  double probability(std::size_t k) const;  // 0 for unobserved degrees
  double ccdf(std::size_t k) const;         // P(K >= k) for any k
};

DegreeDistribution degree_distribution(const TagGraph& graph);

// ---------------------------------------------------------------------------
// Power-law fit

struct LogLogPoint {
  double x;  // degree k
  double y;  // P(k) or CCDF(k), > 0
};

// Least-squares line through (log10 x, log10 y).
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r = 0;  // Pearson correlation; 0 when y has no variance
  bool flat = false;
  std::size_t points = 0;
};

LineFit fit_log_log(std::span<const LogLogPoint> points);

struct PowerLawFit {
  double gamma = 0;  // P(k) ~ k^-gamma
  double r = 0;
  std::size_t k_min = 1;
  std::size_t points_used = 0;
  double intercept = 0;  // log10 of the prefactor
  bool flat = false;
};

// Unbinned fit on raw (log10 k, log10 P(k)) for observed k >= max(k_min, 1).
// Throws DegenerateError with fewer than 3 usable points.
PowerLawFit fit_power_law(const DegreeDistribution& dist, std::size_t k_min = 1);

// Fit on (log10 k, log10 CCDF(k)). A pure power law has CCDF slope
// -(gamma - 1); the returned gamma is 1 - slope.
PowerLawFit fit_ccdf_power_law(const DegreeDistribution& dist, std::size_t k_min = 1);

// ---------------------------------------------------------------------------
// Clustering

enum class LowDegreePolicy {
  exclude,      // nodes with k < 2 left out of the average
  count_as_zero // nodes with k < 2 contribute C_i = 0
};

// Number of edges among the neighbors of `node`.
std::size_t neighbor_edge_count(const TagGraph& graph, NodeId node);

// C_i = 2 E_i / (k_i (k_i - 1)); nullopt when k_i < 2. Throws on bad id.
std::optional<double> local_clustering(const TagGraph& graph, NodeId node);

struct ClusteringResult {
  std::vector<std::optional<double>> local;
  double average = 0;
  std::size_t defined_nodes = 0;
  std::size_t undefined_nodes = 0;
  LowDegreePolicy policy = LowDegreePolicy::exclude;
};

// Throws DegenerateError when no node has degree >= 2.
ClusteringResult average_clustering(const TagGraph& graph,
                                    LowDegreePolicy policy = LowDegreePolicy::exclude);

// ---------------------------------------------------------------------------
// Path length

struct PathLengthOptions {
  enum class Mode { exact, sampled };
  Mode mode = Mode::exact;
  std::size_t sources = 1000;  // sampled mode
  std::uint64_t seed = 1;      // sampled mode
  bool largest_component_only = false;
  unsigned threads = 0;        // 0: hardware concurrency

  static PathLengthOptions exact() { return {}; }
  static PathLengthOptions sampled(std::size_t sources, std::uint64_t seed) {
    PathLengthOptions o;
    o.mode = Mode::sampled;
    o.sources = sources;
    o.seed = seed;
    return o;
  }
};

// Graphs up to this many nodes get exact path lengths by default.
inline constexpr std::size_t kExactPathLengthLimit = 20000;
inline constexpr std::size_t kDefaultSampleSources = 1000;

PathLengthOptions default_path_length_options(std::size_t node_count);

struct PathLengthResult {
  double value = 0;            // mean shortest-path length over counted pairs
  std::uint64_t pairs = 0;     // unordered pairs (exact) or (source, target) pairs (sampled)
  std::uint64_t distance_sum = 0;
  PathLengthOptions::Mode mode = PathLengthOptions::Mode::exact;
  std::size_t sources = 0;
  std::uint64_t seed = 0;
  std::optional<double> standard_error;  // sampled mode only
  bool largest_component_only = false;
  std::size_t diameter = 0;    // longest distance seen
};

// BFS from every node (exact) or from `sources` distinct random nodes
// (sampled). Pairs in different components are skipped. Throws
// DegenerateError on an edgeless graph.
PathLengthResult average_path_length(const TagGraph& graph, const PathLengthOptions& options = {});

// Hop distances from `source`; -1 marks unreachable nodes.
std::vector<std::int32_t> bfs_distances(const TagGraph& graph, NodeId source);

// ---------------------------------------------------------------------------
// Summary

struct NetworkStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> avg_degree;  // 2M/N, absent when N = 0
  std::optional<ClusteringResult> clustering;
  std::optional<PathLengthResult> path_length;
  std::size_t components = 0;
  std::size_t largest_component = 0;
  std::size_t isolated_nodes = 0;
  std::vector<std::string> warnings;  // why a statistic is absent
};

// Never throws on degenerate graphs: a statistic that cannot be computed is
// left empty and the reason recorded in `warnings`.
NetworkStats network_summary(const TagGraph& graph, const PathLengthOptions& apl,
                             LowDegreePolicy clustering_policy = LowDegreePolicy::exclude);

}  // namespace tagnet::metrics
