#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "tagnet/diagnostics.hpp"
#include "tagnet/error.hpp"

using namespace tagnet;
using namespace tagnet::diagnostics;
using doctest::Approx;

TEST_CASE("er_baseline") {
  const auto reference = er_baseline(9804, 11.0);
  CHECK(std::abs(reference.l_random - 3.83) <= 0.01);
  CHECK(std::abs(reference.c_random - 0.00112) <= 0.00001);

  CHECK(er_baseline(std::numbers::e, std::numbers::e).l_random == Approx(1.0).epsilon(1e-12));
  const auto hundred = er_baseline(100, 10);
  CHECK(hundred.l_random == Approx(2.0).epsilon(1e-12));
  CHECK(hundred.c_random == Approx(0.1).epsilon(1e-12));

  CHECK_THROWS_AS(er_baseline(100, 1.0), DegenerateError);
  CHECK_THROWS_AS(er_baseline(100, 0.5), DegenerateError);
  CHECK_THROWS_AS(er_baseline(1, 3.0), DegenerateError);
}

TEST_CASE("er_baseline is scale-consistent") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> n_dist(2, 1e6), k_dist(1.01, 50);
  for (int i = 0; i < 1000; ++i) {
    const double n = n_dist(rng), k = k_dist(rng);
    CHECK(er_baseline(n, k).c_random * n == Approx(k).epsilon(1e-12));
  }
}

TEST_CASE("small_world_verdict") {
  const ErBaseline reference{3.83, 0.00112};
  const auto v = small_world_verdict(3.40, 0.06, reference);
  CHECK(v.small_world);
  CHECK(v.l_ratio == Approx(0.8877).epsilon(1e-3));
  CHECK(v.c_ratio == Approx(53.57).epsilon(1e-3));

  CHECK_FALSE(small_world_verdict(reference.l_random, reference.c_random, reference).small_world);

  const auto strict = small_world_verdict(3.40, 0.06, reference, {0.5, 10.0});
  CHECK_FALSE(strict.small_world);
  CHECK(strict.l_ratio == v.l_ratio);
  CHECK(strict.c_ratio == v.c_ratio);
  CHECK(strict.thresholds.max_l_ratio == 0.5);
}

TEST_CASE("scale_free_verdict") {
  metrics::PowerLawFit fit;
  fit.gamma = 1.418;
  fit.r = -0.97;
  CHECK(scale_free_verdict(fit).scale_free);
  fit.gamma = 2;
  fit.r = -1;
  CHECK(scale_free_verdict(fit).scale_free);
  fit.gamma = 0.5;
  fit.r = -0.3;
  const auto weak = scale_free_verdict(fit);
  CHECK_FALSE(weak.scale_free);
  CHECK(weak.abs_r == Approx(0.3));
  fit.gamma = -1;
  fit.r = 0.99;
  CHECK_FALSE(scale_free_verdict(fit).scale_free);
}

TEST_CASE("top_k_degree") {
  TagTable t;
  for (const char* s : {"c", "a", "b"}) t.intern(s);
  const auto k3 = TagGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(top_k_degree(k3, t, 2) == std::vector<RankedTag>{{2, "a"}, {2, "b"}});
  CHECK(top_k_degree(k3, t, 10).size() == 3);
  CHECK_THROWS_AS(top_k_degree(k3, t, 0), InvalidArgument);
}

TEST_CASE("top_k_degree output is totally ordered") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    const auto g = TagGraph::from_edges(n, oracle::random_edges(n, 0.1, rng));
    TagTable t;
    for (std::size_t i = 0; i < n; ++i) t.intern("tag" + std::to_string(rng()));
    const auto top = top_k_degree(g, t, 1 + rng() % 60);
    for (std::size_t i = 1; i < top.size(); ++i) {
      const bool ordered = top[i - 1].degree > top[i].degree ||
                           (top[i - 1].degree == top[i].degree && top[i - 1].tag < top[i].tag);
      CHECK(ordered);
    }
  }
}

TEST_CASE("analyze bundles everything and degrades on small graphs") {
  TagTable t = TagTable::numbered(4);
  const auto k4 = TagGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto s = analyze(k4, t);
  CHECK(s.stats.n == 4);
  CHECK(*s.stats.avg_degree == 3.0);
  CHECK(s.stats.clustering->average == 1.0);
  CHECK(s.stats.path_length->value == 1.0);
  CHECK(s.baseline.has_value());
  CHECK_FALSE(s.fit.has_value());  // one distinct degree
  CHECK_FALSE(s.scale_free.has_value());
  CHECK(s.small_world.has_value());

  const auto empty = analyze(TagGraph::from_edges(0, {}), TagTable{});
  CHECK_FALSE(empty.baseline);
  CHECK_FALSE(empty.small_world);
  CHECK_FALSE(empty.warnings.empty());
}
