#include "tagnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "tagnet/error.hpp"
#include "tagnet/kernels.hpp"
#include "tagnet/random.hpp"

namespace tagnet::metrics {

namespace {

// Neumaier-compensated sum; the result depends only on the order of add()
// calls, which every caller keeps fixed.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

// ---------------------------------------------------------------------------
// Degree distribution

double DegreeDistribution::probability(std::size_t k) const {
  auto it = std::lower_bound(bins.begin(), bins.end(), k,
                             [](const DegreeBin& b, std::size_t d) { return b.degree < d; });
  return it != bins.end() && it->degree == k ? it->probability : 0.0;
}

double DegreeDistribution::ccdf(std::size_t k) const {
  auto it = std::lower_bound(bins.begin(), bins.end(), k,
                             [](const DegreeBin& b, std::size_t d) { return b.degree < d; });
  return it == bins.end() ? 0.0 : it->ccdf;
}

DegreeDistribution degree_distribution(const TagGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n == 0) throw DegenerateError("degree distribution of an empty graph");
  std::size_t max_degree = 0;
  for (NodeId v = 0; v < n; ++v) max_degree = std::max(max_degree, graph.degree_unchecked(v));
  std::vector<std::size_t> counts(max_degree + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++counts[graph.degree_unchecked(v)];

  DegreeDistribution dist;
  dist.node_count = n;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k <= max_degree; ++k) {
    if (counts[k] > 0) dist.bins.push_back({k, counts[k], static_cast<double>(counts[k]) * inv_n, 0.0});
  }
  // Tail sums from integer counts so CCDF at the smallest degree is exactly 1.
  std::size_t tail = 0;
  for (auto it = dist.bins.rbegin(); it != dist.bins.rend(); ++it) {
    tail += it->count;
    it->ccdf = static_cast<double>(tail) * inv_n;
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Fitting

LineFit fit_log_log(std::span<const LogLogPoint> points) {
  if (points.size() < 2) throw DegenerateError("log-log fit needs at least two points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.x > 0) || !(p.y > 0)) throw InvalidArgument("log-log fit needs positive coordinates");
    xs.push_back(std::log10(p.x));
    ys.push_back(std::log10(p.y));
  }
  const double n = static_cast<double>(points.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx.add(xs[i]);
    sy.add(ys[i]);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, syy, sxy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  if (sxx.value() <= 0) throw DegenerateError("log-log fit needs distinct x values");

  LineFit fit;
  fit.points = points.size();
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  if (syy.value() <= 0) {
    fit.flat = true;
    fit.slope = 0;
    fit.intercept = my;
    fit.r = 0;
  } else {
    fit.r = std::clamp(sxy.value() / std::sqrt(sxx.value() * syy.value()), -1.0, 1.0);
  }
  return fit;
}

namespace {

PowerLawFit fit_from(const DegreeDistribution& dist, std::size_t k_min, bool use_ccdf) {
  const std::size_t lo = std::max<std::size_t>(k_min, 1);
  std::vector<LogLogPoint> pts;
  for (const auto& b : dist.bins) {
    if (b.degree >= lo && b.count > 0) {
      pts.push_back({static_cast<double>(b.degree), use_ccdf ? b.ccdf : b.probability});
    }
  }
  if (pts.size() < 3) {
    throw DegenerateError("power-law fit needs at least 3 distinct degrees >= " + std::to_string(lo) +
                          ", found " + std::to_string(pts.size()));
  }
  const LineFit line = fit_log_log(pts);
  PowerLawFit fit;
  fit.gamma = use_ccdf ? 1.0 - line.slope : -line.slope;
  if (line.flat && !use_ccdf) fit.gamma = 0.0;
  fit.r = line.r;
  fit.k_min = k_min;
  fit.points_used = pts.size();
  fit.intercept = line.intercept;
  fit.flat = line.flat;
  return fit;
}

}  // namespace

PowerLawFit fit_power_law(const DegreeDistribution& dist, std::size_t k_min) {
  return fit_from(dist, k_min, false);
}

PowerLawFit fit_ccdf_power_law(const DegreeDistribution& dist, std::size_t k_min) {
  return fit_from(dist, k_min, true);
}

// ---------------------------------------------------------------------------
// Clustering

std::size_t neighbor_edge_count(const TagGraph& graph, NodeId node) {
  const auto row = graph.neighbors(node);
  std::size_t twice = 0;
  for (NodeId u : row) twice += kernels::intersect_count(row, graph.neighbors_unchecked(u));
  return twice / 2;
}

std::optional<double> local_clustering(const TagGraph& graph, NodeId node) {
  const std::size_t k = graph.degree(node);
  if (k < 2) return std::nullopt;
  const auto e = static_cast<double>(neighbor_edge_count(graph, node));
  return 2.0 * e / (static_cast<double>(k) * static_cast<double>(k - 1));
}

ClusteringResult average_clustering(const TagGraph& graph, LowDegreePolicy policy) {
  ClusteringResult out;
  out.policy = policy;
  const std::size_t n = graph.node_count();
  out.local.resize(n);
  CompensatedSum sum;
  for (NodeId v = 0; v < n; ++v) {
    out.local[v] = local_clustering(graph, v);
    if (out.local[v]) {
      ++out.defined_nodes;
      sum.add(*out.local[v]);
    } else {
      ++out.undefined_nodes;
    }
  }
  if (out.defined_nodes == 0) throw DegenerateError("no node has degree >= 2; clustering undefined");
  const std::size_t denom = policy == LowDegreePolicy::exclude ? out.defined_nodes : n;
  out.average = sum.value() / static_cast<double>(denom);
  return out;
}

// ---------------------------------------------------------------------------
// Path length

std::vector<std::int32_t> bfs_distances(const TagGraph& graph, NodeId source) {
  if (source >= graph.node_count()) throw InvalidArgument("source out of range");
  std::vector<std::int32_t> dist(graph.node_count(), -1);
  std::vector<NodeId> queue;
  queue.reserve(graph.node_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    for (NodeId u : graph.neighbors_unchecked(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

PathLengthOptions default_path_length_options(std::size_t node_count) {
  if (node_count <= kExactPathLengthLimit) return PathLengthOptions::exact();
  return PathLengthOptions::sampled(kDefaultSampleSources, 1);
}

namespace {

struct SourceTotals {
  std::uint64_t distance_sum = 0;
  std::uint64_t reached = 0;  // targets other than the source
  std::uint32_t eccentricity = 0;
};

// Reusable BFS scratch for one worker. Visit marks are epoch stamps so the
// distance array is never cleared between sources.
class BfsWorker {
 public:
  explicit BfsWorker(std::size_t n) : stamp_(n, 0), queue_(n) {}

  SourceTotals run(const TagGraph& graph, NodeId source) {
    ++epoch_;
    SourceTotals t;
    std::size_t head = 0, tail = 0;
    queue_[tail++] = source;
    stamp_[source] = epoch_;
    std::uint32_t level = 0;
    while (head < tail) {
      const std::size_t level_end = tail;
      ++level;
      for (; head < level_end; ++head) {
        for (NodeId u : graph.neighbors_unchecked(queue_[head])) {
          if (stamp_[u] != epoch_) {
            stamp_[u] = epoch_;
            queue_[tail++] = u;
          }
        }
      }
      const std::size_t found = tail - level_end;
      if (found > 0) {
        t.distance_sum += static_cast<std::uint64_t>(found) * level;
        t.reached += found;
        t.eccentricity = level;
      }
    }
    return t;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<NodeId> queue_;
  std::uint32_t epoch_ = 0;
};

std::vector<SourceTotals> run_sources(const TagGraph& graph, const std::vector<NodeId>& sources,
                                      unsigned threads) {
  std::vector<SourceTotals> totals(sources.size());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(sources.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    BfsWorker bfs(graph.node_count());
    constexpr std::size_t kChunk = 16;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk, std::memory_order_relaxed);
      if (begin >= sources.size()) break;
      const std::size_t end = std::min(begin + kChunk, sources.size());
      for (std::size_t i = begin; i < end; ++i) totals[i] = bfs.run(graph, sources[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return totals;
}

}  // namespace

PathLengthResult average_path_length(const TagGraph& graph, const PathLengthOptions& options) {
  if (graph.edge_count() == 0) throw DegenerateError("no connected pairs: graph has no edges");

  std::vector<NodeId> candidates;
  if (options.largest_component_only) {
    const auto comps = connected_components(graph);
    const auto lcc = comps.largest();
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      if (comps.label[v] == lcc) candidates.push_back(v);
    }
  } else {
    candidates.resize(graph.node_count());
    std::iota(candidates.begin(), candidates.end(), NodeId{0});
  }

  PathLengthResult out;
  out.mode = options.mode;
  out.largest_component_only = options.largest_component_only;

  std::vector<NodeId> sources;
  if (options.mode == PathLengthOptions::Mode::exact) {
    sources = std::move(candidates);
  } else {
    if (options.sources == 0) throw InvalidArgument("sampled path length needs at least one source");
    out.seed = options.seed;
    // Partial Fisher-Yates: the first `take` entries are a uniform sample
    // without replacement.
    Rng rng(options.seed);
    const std::size_t take = std::min(options.sources, candidates.size());
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(take);
    sources = std::move(candidates);
  }
  out.sources = sources.size();

  const auto totals = run_sources(graph, sources, options.threads);
  std::uint64_t sum = 0, pairs = 0;
  for (const auto& t : totals) {
    sum += t.distance_sum;
    pairs += t.reached;
    out.diameter = std::max<std::size_t>(out.diameter, t.eccentricity);
  }
  if (pairs == 0) throw DegenerateError("no connected pairs among the chosen sources");

  if (options.mode == PathLengthOptions::Mode::exact) {
    // Every unordered pair was seen from both ends.
    out.distance_sum = sum / 2;
    out.pairs = pairs / 2;
  } else {
    out.distance_sum = sum;
    out.pairs = pairs;
    CompensatedSum means;
    std::size_t used = 0;
    std::vector<double> per_source;
    for (const auto& t : totals) {
      if (t.reached == 0) continue;
      per_source.push_back(static_cast<double>(t.distance_sum) / static_cast<double>(t.reached));
      means.add(per_source.back());
      ++used;
    }
    double se = 0;
    if (used > 1) {
      const double mean = means.value() / static_cast<double>(used);
      CompensatedSum sq;
      for (double x : per_source) sq.add((x - mean) * (x - mean));
      const double var = sq.value() / static_cast<double>(used - 1);
      se = std::sqrt(var / static_cast<double>(used));
    }
    out.standard_error = se;
  }
  out.value = static_cast<double>(out.distance_sum) / static_cast<double>(out.pairs);
  return out;
}

// ---------------------------------------------------------------------------
// Summary

NetworkStats network_summary(const TagGraph& graph, const PathLengthOptions& apl,
                             LowDegreePolicy clustering_policy) {
  NetworkStats s;
  s.n = graph.node_count();
  s.m = graph.edge_count();
  s.isolated_nodes = isolated_node_count(graph);
  if (s.n == 0) {
    s.warnings.emplace_back("empty graph: no statistics available");
    return s;
  }
  s.avg_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
  const auto comps = connected_components(graph);
  s.components = comps.count();
  s.largest_component = comps.size_of[comps.largest()];
  try {
    s.clustering = average_clustering(graph, clustering_policy);
  } catch (const DegenerateError& e) {
    s.warnings.emplace_back(std::string("clustering: ") + e.what());
  }
  try {
    s.path_length = average_path_length(graph, apl);
  } catch (const DegenerateError& e) {
    s.warnings.emplace_back(std::string("path length: ") + e.what());
  }
  return s;
}

}  // namespace tagnet::metrics
