#include "tagnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "tagnet/error.hpp"

namespace tagnet::diagnostics {

ErBaseline er_baseline(double n, double avg_degree) {
  if (!(n > 1)) throw DegenerateError("random-graph baseline needs N > 1");
  if (!(avg_degree > 1)) throw DegenerateError("random-graph baseline needs <k> > 1 (ln<k> <= 0)");
  return {std::log(n) / std::log(avg_degree), avg_degree / n};
}

SmallWorldVerdict small_world_verdict(double path_length, double clustering, const ErBaseline& baseline,
                                      const SmallWorldThresholds& thresholds) {
  SmallWorldVerdict v;
  v.thresholds = thresholds;
  v.l_ratio = path_length / baseline.l_random;
  v.c_ratio = clustering / baseline.c_random;
  v.small_world = v.l_ratio <= thresholds.max_l_ratio && v.c_ratio >= thresholds.min_c_ratio;
  return v;
}

ScaleFreeVerdict scale_free_verdict(const metrics::PowerLawFit& fit, const ScaleFreeThresholds& thresholds) {
  ScaleFreeVerdict v;
  v.thresholds = thresholds;
  v.gamma = fit.gamma;
  v.abs_r = std::abs(fit.r);
  v.scale_free = v.abs_r >= thresholds.min_abs_r && v.gamma > 0;
  return v;
}

std::vector<RankedTag> top_k_degree(const TagGraph& graph, const TagTable& table, std::size_t k) {
  if (k == 0) throw InvalidArgument("top-k needs k >= 1");
  if (table.size() != graph.node_count()) throw InvalidArgument("tag table size differs from node count");
  std::vector<NodeId> ids(graph.node_count());
  for (NodeId v = 0; v < ids.size(); ++v) ids[v] = v;
  const auto before = [&](NodeId a, NodeId b) {
    const auto da = graph.degree_unchecked(a), db = graph.degree_unchecked(b);
    if (da != db) return da > db;
    return table.lookup(a) < table.lookup(b);
  };
  const std::size_t take = std::min(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(), before);
  std::vector<RankedTag> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({graph.degree_unchecked(ids[i]), table.lookup(ids[i])});
  return out;
}

NetworkSummary analyze(const TagGraph& graph, const TagTable& table, const AnalysisOptions& options) {
  NetworkSummary s;
  s.options = options;
  s.stats = metrics::network_summary(graph, options.path_length, options.clustering_policy);
  s.warnings = s.stats.warnings;
  if (s.stats.n == 0) return s;

  s.distribution = metrics::degree_distribution(graph);
  try {
    s.fit = metrics::fit_power_law(*s.distribution, options.k_min);
    s.ccdf_fit = metrics::fit_ccdf_power_law(*s.distribution, options.k_min);
    s.scale_free = scale_free_verdict(*s.fit, options.scale_free);
  } catch (const DegenerateError& e) {
    s.warnings.emplace_back(std::string("power-law fit: ") + e.what());
  }
  try {
    s.baseline = er_baseline(static_cast<double>(s.stats.n), *s.stats.avg_degree);
  } catch (const DegenerateError& e) {
    s.warnings.emplace_back(std::string("baseline: ") + e.what());
  }
  if (s.baseline && s.stats.clustering && s.stats.path_length) {
    s.small_world = small_world_verdict(s.stats.path_length->value, s.stats.clustering->average, *s.baseline,
                                        options.small_world);
  } else {
    s.warnings.emplace_back("small-world verdict unavailable");
  }
  if (!s.scale_free) s.warnings.emplace_back("scale-free verdict unavailable");
  s.top_tags = top_k_degree(graph, table, std::max<std::size_t>(options.top_k, 1));
  return s;
}

}  // namespace tagnet::diagnostics
