#include "tagnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "tagnet/error.hpp"
#include "tagnet/random.hpp"

namespace tagnet::synth {

namespace {

void check_node_count(std::size_t n) {
  if (n > std::numeric_limits<NodeId>::max()) throw InvalidArgument("too many nodes");
}

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

std::string fmt_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

void validate(const GeneratorSpec& spec) {
  std::visit(Overloaded{
                 [](const ErdosRenyi& m) {
                   check_node_count(m.n);
                   if (!(m.p >= 0 && m.p <= 1)) throw InvalidArgument("ER needs 0 <= p <= 1");
                 },
                 [](const WattsStrogatz& m) {
                   check_node_count(m.n);
                   if (m.k_ring % 2 != 0) throw InvalidArgument("WS needs an even k_ring");
                   if (m.k_ring >= m.n) throw InvalidArgument("WS needs k_ring < n");
                   if (!(m.beta >= 0 && m.beta <= 1)) throw InvalidArgument("WS needs 0 <= beta <= 1");
                 },
                 [](const BarabasiAlbert& m) {
                   check_node_count(m.n);
                   if (m.m < 1 || m.m >= m.n) throw InvalidArgument("BA needs 1 <= m < n");
                 },
             },
             spec.model);
}

TagGraph generate_er(std::size_t n, double p, std::uint64_t seed) {
  validate({ErdosRenyi{n, p}, seed});
  std::vector<Edge> edges;
  if (n < 2 || p == 0) return TagGraph::from_edges(n, {});
  if (p == 1) {
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    }
    return TagGraph::from_edges(n, std::move(edges));
  }
  // Walk pairs (v, w), w < v, in row order, jumping by geometric gaps.
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  std::size_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.unit();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return TagGraph::from_edges(n, std::move(edges));
}

TagGraph generate_ws(std::size_t n, std::size_t k_ring, double beta, std::uint64_t seed) {
  validate({WattsStrogatz{n, k_ring, beta}, seed});
  std::vector<std::set<NodeId>> adj(n);
  const auto link = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  for (std::size_t j = 1; j <= k_ring / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) link(u, static_cast<NodeId>((u + j) % n));
  }
  Rng rng(seed);
  for (std::size_t j = 1; j <= k_ring / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      if (!(rng.unit() < beta)) continue;
      if (adj[u].size() >= n - 1) continue;
      const auto v = static_cast<NodeId>((u + j) % n);
      NodeId w;
      do {
        w = static_cast<NodeId>(rng.below(n));
      } while (w == u || adj[u].contains(w));
      adj[u].erase(v);
      adj[v].erase(u);
      link(u, w);
    }
  }
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b : adj[a]) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  return TagGraph::from_edges(n, std::move(edges));
}

TagGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
  validate({BarabasiAlbert{n, m}, seed});
  std::vector<Edge> edges;
  // Each edge contributes both endpoints, so a uniform draw from this list
  // picks a node with probability proportional to its degree.
  std::vector<NodeId> endpoints;
  edges.reserve(m * (m + 1) / 2 + m * (n - m - 1));
  endpoints.reserve(2 * edges.capacity());
  const auto link = [&](NodeId a, NodeId b) {
    edges.emplace_back(a, b);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (NodeId a = 0; a <= m; ++a) {
    for (NodeId b = a + 1; b <= m; ++b) link(a, b);
  }
  Rng rng(seed);
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) link(v, t);
  }
  return TagGraph::from_edges(n, std::move(edges));
}

TagGraph generate(const GeneratorSpec& spec) {
  return std::visit(Overloaded{
                        [&](const ErdosRenyi& m) { return generate_er(m.n, m.p, spec.seed); },
                        [&](const WattsStrogatz& m) { return generate_ws(m.n, m.k_ring, m.beta, spec.seed); },
                        [&](const BarabasiAlbert& m) { return generate_ba(m.n, m.m, spec.seed); },
                    },
                    spec.model);
}

std::string describe(const GeneratorSpec& spec) {
  return std::visit(
      Overloaded{
          [](const ErdosRenyi& m) { return "er(n=" + std::to_string(m.n) + ",p=" + fmt_double(m.p) + ")"; },
          [](const WattsStrogatz& m) {
            return "ws(n=" + std::to_string(m.n) + ",k=" + std::to_string(m.k_ring) + ",beta=" +
                   fmt_double(m.beta) + ")";
          },
          [](const BarabasiAlbert& m) {
            return "ba(n=" + std::to_string(m.n) + ",m=" + std::to_string(m.m) + ")";
          },
      },
      spec.model);
}

std::vector<std::string> snapshot_attributes(const GeneratorSpec& spec) {
  return {"generator=" + describe(spec), "rng=" + std::string(Rng::kAlgorithm),
          "seed=" + std::to_string(spec.seed)};
}

ingest::ItemTagSets to_item_tag_sets(const TagGraph& graph, const TagTable& table) {
  ingest::ItemTagSets items;
  for (NodeId a = 0; a < graph.node_count(); ++a) {
    const auto row = graph.neighbors_unchecked(a);
    if (row.empty()) {
      items.add("synth:node/" + std::to_string(a), {table.lookup(a)});
      continue;
    }
    for (NodeId b : row) {
      if (a < b) {
        items.add("synth:edge/" + std::to_string(a) + "-" + std::to_string(b), {table.lookup(a), table.lookup(b)});
      }
    }
  }
  return items;
}

}  // namespace tagnet::synth
