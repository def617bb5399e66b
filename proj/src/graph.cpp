#include "tagnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "tagnet/error.hpp"

namespace tagnet {

// ---------------------------------------------------------------------------
// TagTable

NodeId TagTable::intern(std::string_view tag) {
  if (auto it = ids_.find(tag); it != ids_.end()) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(tag);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<NodeId> TagTable::find(std::string_view tag) const {
  if (auto it = ids_.find(tag); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& TagTable::lookup(NodeId id) const {
  if (id >= names_.size()) throw InvalidArgument("tag id " + std::to_string(id) + " out of range");
  return names_[id];
}

TagTable TagTable::numbered(std::size_t n) {
  TagTable t;
  for (std::size_t i = 0; i < n; ++i) t.intern(std::to_string(i));
  return t;
}

// ---------------------------------------------------------------------------
// TagGraph

TagGraph TagGraph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
  for (auto& [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (a == b) throw InvalidArgument("self-loop on node " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  TagGraph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& [a, b] : edges) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(edges.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted (a, b) with a < b: appending b to a's row and a to b's row in this
  // order leaves every row sorted. Row b receives all its smaller neighbors a
  // (in increasing a) before any larger neighbor, since those come from
  // edges (b, c) that sort after every (a, b) with a < b.
  for (const auto& [a, b] : edges) {
    g.targets_[cursor[a]++] = b;
    g.targets_[cursor[b]++] = a;
  }
  return g;
}

std::size_t TagGraph::degree(NodeId node) const {
  if (node >= node_count()) throw InvalidArgument("node id " + std::to_string(node) + " out of range");
  return degree_unchecked(node);
}

std::span<const NodeId> TagGraph::neighbors(NodeId node) const {
  if (node >= node_count()) throw InvalidArgument("node id " + std::to_string(node) + " out of range");
  return neighbors_unchecked(node);
}

bool TagGraph::has_edge(NodeId a, NodeId b) const {
  const auto row = neighbors(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::vector<Edge> TagGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId a = 0; a < node_count(); ++a) {
    for (NodeId b : neighbors_unchecked(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

void TagGraph::validate() const {
  const std::size_t n = node_count();
  if (n == 0) {
    if (!targets_.empty()) throw InvariantViolation("edges without nodes");
    return;
  }
  if (offsets_.front() != 0 || offsets_.back() != targets_.size()) {
    throw InvariantViolation("offset array does not cover neighbor array");
  }
  if (targets_.size() % 2 != 0) throw InvariantViolation("degree sum is odd");
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (offsets_[v] > offsets_[v + 1]) throw InvariantViolation("offsets not monotone");
    const auto row = neighbors_unchecked(v);
    degree_sum += row.size();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const NodeId u = row[i];
      if (u >= n) throw InvariantViolation("neighbor id out of range");
      if (u == v) throw InvariantViolation("self-loop on node " + std::to_string(v));
      if (i > 0 && row[i - 1] >= u) throw InvariantViolation("neighbor list not strictly sorted");
      const auto back = neighbors_unchecked(u);
      if (!std::binary_search(back.begin(), back.end(), v)) {
        throw InvariantViolation("asymmetric edge " + std::to_string(v) + "-" + std::to_string(u));
      }
    }
  }
  if (degree_sum != 2 * edge_count()) throw InvariantViolation("degree sum != 2M");
}

TagGraph TagGraph::permuted(std::span<const NodeId> perm) const {
  if (perm.size() != node_count()) throw InvalidArgument("permutation size mismatch");
  auto list = edges();
  for (auto& [a, b] : list) {
    a = perm[a];
    b = perm[b];
  }
  return from_edges(node_count(), std::move(list));
}

// ---------------------------------------------------------------------------
// Construction

BuiltGraph build_cooccurrence_graph(const ingest::ItemTagSets& items, const BuildOptions& options) {
  BuiltGraph out;
  std::vector<Edge> edges;
  std::vector<NodeId> ids;
  for (const auto& [url, tags] : items.items()) {
    ++out.stats.items;
    out.stats.largest_item = std::max(out.stats.largest_item, tags.size());
    if (tags.size() > options.clique_warning_threshold) ++out.stats.large_items;
    ids.clear();
    for (const auto& t : tags) ids.push_back(out.table.intern(t));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        edges.push_back(std::minmax(ids[i], ids[j]));
      }
    }
    // Keep the pending list bounded on inputs with many repeated pairs.
    if (edges.size() > (std::size_t{1} << 24)) {
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
  }
  out.graph = TagGraph::from_edges(out.table.size(), std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Components

std::vector<std::size_t> ComponentLabeling::sizes_descending() const {
  auto s = size_of;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::uint32_t ComponentLabeling::largest() const {
  if (size_of.empty()) throw DegenerateError("graph has no components");
  return static_cast<std::uint32_t>(std::max_element(size_of.begin(), size_of.end()) - size_of.begin());
}

ComponentLabeling connected_components(const TagGraph& graph) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  const std::size_t n = graph.node_count();
  ComponentLabeling out;
  out.label.assign(n, kUnset);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId s = 0; s < n; ++s) {
    if (out.label[s] != kUnset) continue;
    const auto lab = static_cast<std::uint32_t>(out.size_of.size());
    queue.clear();
    queue.push_back(s);
    out.label[s] = lab;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId u : graph.neighbors_unchecked(queue[head])) {
        if (out.label[u] == kUnset) {
          out.label[u] = lab;
          queue.push_back(u);
        }
      }
    }
    out.size_of.push_back(queue.size());
  }
  return out;
}

std::size_t isolated_node_count(const TagGraph& graph) {
  std::size_t count = 0;
  for (NodeId v = 0; v < graph.node_count(); ++v) count += graph.degree_unchecked(v) == 0;
  return count;
}

// ---------------------------------------------------------------------------
// Snapshot

namespace {

constexpr std::string_view kMagic = "tagnet-graph";
constexpr std::string_view kVersion = "v1";

std::string escape_tag(std::string_view tag) {
  std::string out;
  out.reserve(tag.size());
  for (char c : tag) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_tag(std::string_view text, std::size_t line) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '\\') {
      out += text[i];
      continue;
    }
    if (++i == text.size()) throw ParseError("dangling escape in tag", line);
    switch (text[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: throw ParseError("unknown escape in tag", line);
    }
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view text, std::size_t line, const char* what) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(text) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

void write_snapshot(std::ostream& out, const TagGraph& graph, const TagTable& table,
                    const std::vector<std::string>& attributes) {
  if (table.size() != graph.node_count()) throw InvalidArgument("tag table size differs from node count");
  out << kMagic << ' ' << kVersion << ' ' << graph.node_count() << ' ' << graph.edge_count();
  for (const auto& a : attributes) out << ' ' << a;
  out << '\n';
  std::string buf;
  for (NodeId a = 0; a < graph.node_count(); ++a) {
    for (NodeId b : graph.neighbors_unchecked(a)) {
      if (a < b) {
        buf.clear();
        buf += std::to_string(a);
        buf += ' ';
        buf += std::to_string(b);
        buf += '\n';
        out << buf;
      }
    }
  }
  for (NodeId id = 0; id < table.size(); ++id) out << id << '\t' << escape_tag(table.lookup(id)) << '\n';
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("empty snapshot", 1);
  const auto head = split_spaces(line);
  if (head.size() < 4 || head[0] != kMagic) throw ParseError("not a tagnet-graph snapshot", 1);
  if (head[1] != kVersion) throw ParseError("unsupported snapshot version " + std::string(head[1]), 1);
  const auto n = parse_int<std::size_t>(head[2], 1, "node count");
  const auto m = parse_int<std::size_t>(head[3], 1, "edge count");
  if (n > std::numeric_limits<NodeId>::max()) throw ParseError("node count too large", 1);

  Snapshot snap;
  for (std::size_t i = 4; i < head.size(); ++i) snap.attributes.emplace_back(head[i]);

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError("truncated edge list", line_no);
    const auto parts = split_spaces(line);
    if (parts.size() != 2) throw ParseError("edge line must hold two ids", line_no);
    const auto a = parse_int<NodeId>(parts[0], line_no, "node id");
    const auto b = parse_int<NodeId>(parts[1], line_no, "node id");
    if (a >= b || b >= n) throw ParseError("edge must satisfy i < j < N", line_no);
    if (!edges.empty() && Edge{a, b} <= edges.back()) throw ParseError("edges not strictly ordered", line_no);
    edges.emplace_back(a, b);
  }
  for (std::size_t id = 0; id < n; ++id) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError("truncated tag table", line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("tag line needs id<TAB>tag", line_no);
    if (parse_int<std::size_t>(std::string_view(line).substr(0, tab), line_no, "tag id") != id) {
      throw ParseError("tag ids must run 0..N-1 in order", line_no);
    }
    const auto before = snap.table.size();
    snap.table.intern(unescape_tag(std::string_view(line).substr(tab + 1), line_no));
    if (snap.table.size() == before) throw ParseError("duplicate tag", line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty()) throw ParseError("trailing content after tag table", line_no);
  }
  snap.graph = TagGraph::from_edges(n, std::move(edges));
  return snap;
}

}  // namespace tagnet
