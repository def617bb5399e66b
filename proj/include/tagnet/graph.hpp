#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tagnet/ingest.hpp"

namespace tagnet {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Bijection between tag strings and dense ids 0..N-1.
class TagTable {
 public:
  NodeId intern(std::string_view tag);
  std::optional<NodeId> find(std::string_view tag) const;
  const std::string& lookup(NodeId id) const;
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  // Table whose tag for id i is the decimal string of i.
  static TagTable numbered(std::size_t n);

  bool operator==(const TagTable& other) const { return names_ == other.names_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId, Hash, std::equal_to<>> ids_;
};

// Undirected simple graph in compressed sparse row form. Every neighbor list
// is strictly increasing. Immutable once built.
class TagGraph {
 public:
  TagGraph() = default;

  // Builds from an edge list. Endpoint order and duplicates do not matter;
  // self-loops and out-of-range ids throw InvalidArgument.
  static TagGraph from_edges(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  // Throws InvalidArgument for out-of-range ids.
  std::size_t degree(NodeId node) const;
  std::span<const NodeId> neighbors(NodeId node) const;

  std::size_t degree_unchecked(NodeId node) const noexcept {
    return offsets_[node + 1] - offsets_[node];
  }
  std::span<const NodeId> neighbors_unchecked(NodeId node) const noexcept {
    return {targets_.data() + offsets_[node], targets_.data() + offsets_[node + 1]};
  }

  bool has_edge(NodeId a, NodeId b) const;

  // Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  // Checks sortedness, symmetry, absence of self-loops and the degree-sum
  // identity. Throws InvariantViolation on the first failure.
  void validate() const;

  // Same graph with node v renamed to perm[v].
  TagGraph permuted(std::span<const NodeId> perm) const;

  bool operator==(const TagGraph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

struct BuildOptions {
  // Items with more tags than this are counted as suspicious. They are still
  // expanded into full cliques.
  std::size_t clique_warning_threshold = 1000;
};

struct BuildStats {
  std::size_t items = 0;
  std::size_t large_items = 0;
  std::size_t largest_item = 0;
};

struct BuiltGraph {
  TagTable table;
  TagGraph graph;
  BuildStats stats;
};

// Every tag becomes a node; all tags of one URL are linked pairwise. Ids are
// assigned by first appearance walking URLs in order and each URL's tags in
// order, so equal inputs give equal outputs.
BuiltGraph build_cooccurrence_graph(const ingest::ItemTagSets& items, const BuildOptions& options = {});

struct ComponentLabeling {
  std::vector<std::uint32_t> label;  // per node; labels in order of lowest member id
  std::vector<std::size_t> size_of;  // indexed by label

  std::size_t count() const noexcept { return size_of.size(); }
  std::vector<std::size_t> sizes_descending() const;
  std::uint32_t largest() const;  // smallest label among the largest components
};

ComponentLabeling connected_components(const TagGraph& graph);

std::size_t isolated_node_count(const TagGraph& graph);

// Snapshot text format:
//   tagnet-graph v1 N M [key=value ...]
//   i j            (M lines, i < j)
//   id<TAB>tag     (N lines)
// Tags escape backslash, tab, newline and carriage return as \\ \t \n \r.
struct Snapshot {
  TagGraph graph;
  TagTable table;
  std::vector<std::string> attributes;  // trailing key=value header tokens

  bool operator==(const Snapshot&) const = default;
};

void write_snapshot(std::ostream& out, const TagGraph& graph, const TagTable& table,
                    const std::vector<std::string>& attributes = {});
Snapshot read_snapshot(std::istream& in);

}  // namespace tagnet
