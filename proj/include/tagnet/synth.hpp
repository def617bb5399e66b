#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tagnet/graph.hpp"
#include "tagnet/ingest.hpp"

namespace tagnet::synth {

struct ErdosRenyi {
  std::size_t n;
  double p;
};

struct WattsStrogatz {
  std::size_t n;
  std::size_t k_ring;  // even, < n
  double beta;
};

struct BarabasiAlbert {
  std::size_t n;
  std::size_t m;  // 1 <= m < n
};

using Model = std::variant<ErdosRenyi, WattsStrogatz, BarabasiAlbert>;

struct GeneratorSpec {
  Model model;
  std::uint64_t seed = 1;
};

// Throws InvalidArgument on parameters outside the model's domain.
void validate(const GeneratorSpec& spec);

// Each unordered pair independently with probability p (geometric skipping
// over the pair sequence, so cost is O(n + M)).
TagGraph generate_er(std::size_t n, double p, std::uint64_t seed);

// Ring lattice with k_ring/2 neighbors per side; each lattice edge (i, i+j)
// has its far endpoint moved with probability beta to a uniform node that is
// neither i nor already adjacent to i.
TagGraph generate_ws(std::size_t n, std::size_t k_ring, double beta, std::uint64_t seed);

// Preferential attachment from a complete graph on m+1 nodes. Each new node
// picks m distinct targets with probability proportional to degree,
// resampling on collision.
TagGraph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed);

TagGraph generate(const GeneratorSpec& spec);

// "er(n=2000,p=0.01)" style description.
std::string describe(const GeneratorSpec& spec);

// Snapshot header attributes: generator, rng algorithm, seed.
std::vector<std::string> snapshot_attributes(const GeneratorSpec& spec);

// One item per edge (tags = both endpoint names) plus one single-tag item per
// isolated node, so the ingest path rebuilds the same graph up to relabeling.
ingest::ItemTagSets to_item_tag_sets(const TagGraph& graph, const TagTable& table);

}  // namespace tagnet::synth
