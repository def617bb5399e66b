#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "tagnet/error.hpp"
#include "tagnet/kernels.hpp"
#include "tagnet/metrics.hpp"
#include "tagnet/synth.hpp"

using namespace tagnet;
using namespace tagnet::metrics;
using doctest::Approx;

namespace {

constexpr double kExact = 1e-9;

TagGraph k4() { return TagGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }
TagGraph triangle() { return TagGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}); }
TagGraph path3() { return TagGraph::from_edges(3, {{0, 1}, {1, 2}}); }

// Degrees {3,3,2,2,1,1,1,1}: P(1) = 0.5, P(2) = 0.25, P(3) = 0.25.
TagGraph one_one_two_three() {
  return TagGraph::from_edges(8, {{0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}, {4, 7}});
}

DegreeDistribution manual_distribution(const std::vector<std::pair<std::size_t, double>>& points) {
  DegreeDistribution d;
  d.node_count = 1;
  double tail = 0;
  for (auto it = points.rbegin(); it != points.rend(); ++it) tail += it->second;
  for (const auto& [k, p] : points) {
    d.bins.push_back({k, 1, p, tail});
    tail -= p;
  }
  return d;
}

}  // namespace

TEST_CASE("degree_distribution") {
  const auto d = degree_distribution(one_one_two_three());
  CHECK(d.probability(1) == Approx(0.5).epsilon(kExact));
  CHECK(d.probability(2) == Approx(0.25).epsilon(kExact));
  CHECK(d.probability(3) == Approx(0.25).epsilon(kExact));
  CHECK(d.probability(4) == 0.0);
  CHECK(d.ccdf(1) == Approx(1.0).epsilon(kExact));
  CHECK(d.ccdf(2) == Approx(0.5).epsilon(kExact));
  CHECK(d.ccdf(3) == Approx(0.25).epsilon(kExact));

  const auto full = degree_distribution(k4());
  REQUIRE(full.bins.size() == 1);
  CHECK(full.bins[0].degree == 3);
  CHECK(full.bins[0].probability == 1.0);

  // Degree-0 nodes count toward N and sit at k = 0.
  const auto iso = degree_distribution(TagGraph::from_edges(4, {{0, 1}}));
  CHECK(iso.bins.front().degree == 0);
  CHECK(iso.probability(0) == 0.5);
  CHECK(iso.ccdf(0) == 1.0);

  CHECK_THROWS_AS(degree_distribution(TagGraph::from_edges(0, {})), DegenerateError);
}

TEST_CASE("degree distribution invariants on random graphs") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    const auto g = TagGraph::from_edges(n, oracle::random_edges(n, 0.15, rng));
    const auto d = degree_distribution(g);
    double total = 0;
    for (const auto& b : d.bins) total += b.probability;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(std::abs(d.bins.front().ccdf - 1.0) < 1e-12);
    for (std::size_t i = 1; i < d.bins.size(); ++i) CHECK(d.bins[i].ccdf <= d.bins[i - 1].ccdf);
  }
}

TEST_CASE("fit_power_law on exact power laws") {
  SUBCASE("P = 0.5 k^-2 at k in {1, 2, 4}") {
    const auto fit = fit_power_law(manual_distribution({{1, 0.5}, {2, 0.125}, {4, 0.03125}}));
    CHECK(std::abs(fit.gamma - 2.0) < 1e-9);
    CHECK(std::abs(fit.r + 1.0) < 1e-12);
    CHECK(std::abs(fit.intercept - std::log10(0.5)) < 1e-9);
    CHECK(fit.points_used == 3);
  }
  SUBCASE("collinear over many k, arbitrary exponent") {
    std::vector<std::pair<std::size_t, double>> pts;
    for (std::size_t k = 1; k <= 200; k += 3) pts.emplace_back(k, 0.37 * std::pow(double(k), -1.418));
    const auto fit = fit_power_law(manual_distribution(pts));
    CHECK(std::abs(fit.gamma - 1.418) < 1e-9);
    CHECK(std::abs(fit.r + 1.0) < 1e-12);
  }
  SUBCASE("flat") {
    const auto fit = fit_power_law(manual_distribution({{1, 0.2}, {2, 0.2}, {4, 0.2}}));
    CHECK(fit.gamma == 0.0);
    CHECK(fit.r == 0.0);
    CHECK(fit.flat);
  }
  SUBCASE("k_min drops the head and k = 0 is never used") {
    const auto d = manual_distribution({{0, 0.1}, {1, 0.5}, {2, 0.125}, {4, 0.03125}, {8, 0.0078125}});
    CHECK(fit_power_law(d, 0).points_used == 4);
    CHECK(fit_power_law(d, 2).points_used == 3);
    CHECK(std::abs(fit_power_law(d, 2).gamma - 2.0) < 1e-9);
    CHECK_THROWS_AS(fit_power_law(d, 3), DegenerateError);
  }
}

TEST_CASE("CCDF fit of a pure power-law tail") {
  // CCDF(k) = k^-1.5 exactly, so the reported gamma is 2.5.
  DegreeDistribution d;
  d.node_count = 1;
  for (std::size_t k : {1, 2, 4, 8, 16}) d.bins.push_back({k, 1, 0.1, std::pow(double(k), -1.5)});
  const auto fit = fit_ccdf_power_law(d);
  CHECK(std::abs(fit.gamma - 2.5) < 1e-9);
  CHECK(std::abs(fit.r + 1.0) < 1e-12);
}

TEST_CASE("local_clustering") {
  CHECK(*local_clustering(triangle(), 0) == 1.0);
  const auto star = TagGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(*local_clustering(star, 0) == 0.0);
  CHECK_FALSE(local_clustering(star, 1).has_value());
  const auto g = TagGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  CHECK(*local_clustering(g, 0) == Approx(1.0 / 3.0).epsilon(kExact));
  CHECK_THROWS_AS(local_clustering(g, 4), InvalidArgument);
}

TEST_CASE("average_clustering") {
  CHECK(average_clustering(triangle()).average == 1.0);
  const auto p = average_clustering(path3());
  CHECK(p.average == 0.0);
  CHECK(p.defined_nodes == 1);
  CHECK(p.undefined_nodes == 2);

  // Triangle plus pendant: C = (1 + 1 + 1/3) / 3 excluding, / 4 counting as zero.
  const auto g = TagGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  CHECK(average_clustering(g).average == Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0).epsilon(kExact));
  CHECK(average_clustering(g, LowDegreePolicy::count_as_zero).average ==
        Approx((1.0 + 1.0 + 1.0 / 3.0) / 4.0).epsilon(kExact));

  CHECK_THROWS_AS(average_clustering(TagGraph::from_edges(4, {{0, 1}, {2, 3}})), DegenerateError);
}

TEST_CASE("average_path_length examples") {
  const auto p = average_path_length(path3());
  CHECK(p.value == Approx(4.0 / 3.0).epsilon(kExact));
  CHECK(p.pairs == 3);
  CHECK(p.diameter == 2);
  CHECK(average_path_length(k4()).value == 1.0);

  const auto split = average_path_length(TagGraph::from_edges(4, {{0, 1}, {2, 3}}));
  CHECK(split.value == 1.0);
  CHECK(split.pairs == 2);

  CHECK_THROWS_AS(average_path_length(TagGraph::from_edges(3, {})), DegenerateError);
}

TEST_CASE("largest-component-only path length") {
  // Path 0-1-2-3 plus a separate edge 4-5.
  const auto g = TagGraph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
  const auto all = average_path_length(g);
  CHECK(all.pairs == 7);
  CHECK(all.value == Approx(11.0 / 7.0).epsilon(kExact));
  PathLengthOptions o;
  o.largest_component_only = true;
  const auto lcc = average_path_length(g, o);
  CHECK(lcc.pairs == 6);
  CHECK(lcc.value == Approx(10.0 / 6.0).epsilon(kExact));
}

TEST_CASE("sampled path length") {
  const auto ws = synth::generate_ws(300, 6, 0.2, 3);
  REQUIRE(connected_components(ws).count() == 1);
  const auto exact = average_path_length(ws);

  SUBCASE("sources = N reproduces the exact value on a connected graph") {
    const auto all = average_path_length(ws, PathLengthOptions::sampled(300, 42));
    CHECK(all.value == Approx(exact.value).epsilon(1e-12));
    CHECK(all.sources == 300);
    CHECK(all.standard_error.has_value());
  }
  SUBCASE("requesting more sources than nodes caps at N") {
    CHECK(average_path_length(ws, PathLengthOptions::sampled(5000, 1)).sources == 300);
  }
  SUBCASE("sample estimate lands near the exact mean and is seed-deterministic") {
    const auto a = average_path_length(ws, PathLengthOptions::sampled(60, 9));
    const auto b = average_path_length(ws, PathLengthOptions::sampled(60, 9));
    CHECK(a.value == b.value);
    CHECK(a.standard_error == b.standard_error);
    REQUIRE(a.standard_error);
    CHECK(std::abs(a.value - exact.value) < 5 * *a.standard_error + 1e-9);
  }
  SUBCASE("zero sources is rejected") {
    CHECK_THROWS_AS(average_path_length(ws, PathLengthOptions::sampled(0, 1)), InvalidArgument);
  }
}

TEST_CASE("path length is identical for every thread count") {
  const auto g = synth::generate_ba(2000, 2, 8);
  PathLengthOptions one;
  one.threads = 1;
  const auto base = average_path_length(g, one);
  for (unsigned t : {2u, 3u, 8u}) {
    PathLengthOptions o;
    o.threads = t;
    const auto r = average_path_length(g, o);
    CHECK(r.distance_sum == base.distance_sum);
    CHECK(r.pairs == base.pairs);
    CHECK(r.value == base.value);
  }
}

TEST_CASE("clustering and path length are invariant under relabeling") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng() % 80;
    const auto g = TagGraph::from_edges(n, oracle::random_edges(n, 0.1, rng));
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = g.permuted(perm);
    if (g.edge_count() > 0) {
      CHECK(average_path_length(h).value == average_path_length(g).value);
    }
    try {
      const auto cg = average_clustering(g).average;
      CHECK(average_clustering(h).average == Approx(cg).epsilon(1e-12));
    } catch (const DegenerateError&) {
      CHECK_THROWS_AS(average_clustering(h), DegenerateError);
    }
  }
}

TEST_CASE("ER clustering near p, checked against direct neighbor-pair counting") {
  const auto g = synth::generate_er(2000, 0.01, 1);
  const auto c = average_clustering(g);
  CHECK(std::abs(c.average - 0.01) <= 0.005);

  // Independent route: test every neighbor pair with has_edge.
  double sum = 0;
  std::size_t defined = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto row = g.neighbors(v);
    if (row.size() < 2) continue;
    std::size_t e = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) e += g.has_edge(row[i], row[j]);
    }
    sum += 2.0 * double(e) / (double(row.size()) * double(row.size() - 1));
    ++defined;
  }
  CHECK(defined == c.defined_nodes);
  CHECK(c.average == Approx(sum / double(defined)).epsilon(1e-12));
}

TEST_CASE("clustering does not depend on the intersection kernel") {
  const auto g = synth::generate_ba(3000, 4, 2);
  kernels::force_isa(kernels::Isa::scalar);
  const auto scalar = average_clustering(g);
  kernels::reset_isa();
  const auto dispatched = average_clustering(g);
  CHECK(scalar.average == dispatched.average);
  CHECK(scalar.local == dispatched.local);
}

TEST_CASE("network_summary") {
  const auto k = network_summary(k4(), PathLengthOptions::exact());
  CHECK(k.n == 4);
  CHECK(*k.avg_degree == 3.0);
  CHECK(k.clustering->average == 1.0);
  CHECK(k.path_length->value == 1.0);
  CHECK(k.warnings.empty());

  const auto t = network_summary(TagGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}}), PathLengthOptions::exact());
  CHECK(*t.avg_degree == 1.5);
  CHECK(t.clustering->average == 1.0);
  CHECK(t.path_length->value == 1.0);
  CHECK(t.isolated_nodes == 1);
  CHECK(t.components == 2);
  CHECK(t.largest_component == 3);

  const auto empty = network_summary(TagGraph::from_edges(0, {}), PathLengthOptions::exact());
  CHECK_FALSE(empty.avg_degree);
  CHECK_FALSE(empty.warnings.empty());

  const auto edgeless = network_summary(TagGraph::from_edges(3, {}), PathLengthOptions::exact());
  CHECK(*edgeless.avg_degree == 0.0);
  CHECK_FALSE(edgeless.clustering);
  CHECK_FALSE(edgeless.path_length);
  CHECK(edgeless.warnings.size() == 2);
}

TEST_CASE("default path-length mode switches to sampling above the limit") {
  CHECK(default_path_length_options(20000).mode == PathLengthOptions::Mode::exact);
  const auto big = default_path_length_options(20001);
  CHECK(big.mode == PathLengthOptions::Mode::sampled);
  CHECK(big.sources == 1000);
}
