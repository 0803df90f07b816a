#include <doctest.h>

#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "replab/errors.hpp"
#include "replab/graph.hpp"
#include "replab/stats.hpp"
#include "test_support.hpp"

using namespace replab;
using replab::testing::within_three_sigma;

TEST_CASE("pair indices enumerate all pairs lexicographically") {
  for (int n : {2, 3, 7, 40}) {
    std::uint64_t idx = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v, ++idx) {
        CHECK(pair_index(n, u, v) == idx);
        CHECK(pair_from_index(n, idx) == Edge{u, v});
      }
    CHECK(idx == pair_count(n));
  }
  // Large n, spot checks near row boundaries.
  const std::uint64_t n = 1'000'000;
  for (std::uint64_t u : {0ULL, 1ULL, 499'999ULL, 999'998ULL}) {
    auto first = pair_from_index(n, pair_index(n, u, u + 1));
    CHECK(first == Edge{static_cast<int>(u), static_cast<int>(u + 1)});
    auto last = pair_from_index(n, pair_index(n, u, n - 1));
    CHECK(last == Edge{static_cast<int>(u), static_cast<int>(n - 1)});
  }
}

TEST_CASE("graph construction validates edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ParameterError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ParameterError);
  Graph g(3, {{2, 1}, {0, 1}});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("sample_gnm edge cases") {
  Rng rng(1);
  CHECK(sample_gnm(2, 1, rng) == graphs::complete(2));
  CHECK(sample_gnm(4, 6, rng) == graphs::complete(4));
  CHECK(sample_gnm(5, 0, rng).m() == 0);
  CHECK_THROWS_AS(sample_gnm(4, 7, rng), ParameterError);
}

TEST_CASE("sample_gnm n=3 m=1 picks each edge with frequency 1/3") {
  Rng rng(11);
  std::map<Edge, std::uint64_t> hits;
  const std::uint64_t trials = 100'000;
  for (std::uint64_t t = 0; t < trials; ++t) ++hits[sample_gnm(3, 1, rng).edges().front()];
  REQUIRE(hits.size() == 3);
  for (const auto& [e, h] : hits) CHECK(within_three_sigma(h, trials, 1.0 / 3));
}

TEST_CASE("sample_gnm is uniform over the 15 graphs with n=4, m=2") {
  Rng rng(12);
  std::map<std::vector<Edge>, std::uint64_t> hits;
  const std::uint64_t trials = 100'000;
  for (std::uint64_t t = 0; t < trials; ++t) ++hits[sample_gnm(4, 2, rng).edges()];
  REQUIRE(hits.size() == 15);
  std::vector<std::uint64_t> observed;
  for (const auto& [e, h] : hits) observed.push_back(h);
  std::vector<double> expected(15, 1.0 / 15);
  auto chi = chi_square_test(observed, expected);
  CHECK(chi.dof == 14);
  CHECK(chi.p_value > 0.001);
}

TEST_CASE("sample_gnm is deterministic given the seed") {
  Rng a(99), b(99);
  CHECK(sample_gnm(50, 60, a) == sample_gnm(50, 60, b));
}

TEST_CASE("sample_gnp extremes and mean edge count") {
  Rng rng(5);
  CHECK(sample_gnp(6, 0.0, rng).m() == 0);
  CHECK(sample_gnp(6, 1.0, rng) == graphs::complete(6));
  CHECK_THROWS_AS(sample_gnp(6, 1.5, rng), ParameterError);
  CHECK_THROWS_AS(sample_gnp(6, -0.1, rng), ParameterError);
  RunningStats edges;
  for (int t = 0; t < 100'000; ++t) edges.add(static_cast<double>(sample_gnp(3, 0.5, rng).m()));
  // Binomial(3, 1/2): mean 1.5, variance 0.75.
  CHECK(std::abs(edges.mean() - 1.5) <= 3 * std::sqrt(0.75 / 100'000));
}

TEST_CASE("ball examples") {
  Graph p = graphs::path(3);
  auto b0 = ball(p, 0, 0);
  CHECK(b0.vertices == std::vector<Vertex>{0});
  CHECK(b0.edges.empty());
  auto b1 = ball(p, 0, 1);
  CHECK(b1.vertices == std::vector<Vertex>{0, 1});
  CHECK(b1.edges == std::vector<Edge>{{0, 1}});
  CHECK(b1.distances == std::vector<int>{0, 1});

  auto tri = ball(graphs::cycle(3), 0, 1);
  CHECK(tri.size() == 3);
  CHECK(tri.edges.size() == 3);  // the edge {1,2} joins two depth-1 vertices
  CHECK(tri.has_cycle());

  CHECK_THROWS_AS(ball(p, 3, 1), ParameterError);
}

TEST_CASE("ball grows monotonically and stabilizes at the component") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = sample_gnm(30, 30, rng);
    auto comp = g.components();
    for (Vertex v = 0; v < g.n(); v += 7) {
      std::size_t prev = 0;
      int comp_size = static_cast<int>(std::count(comp.begin(), comp.end(), comp[v]));
      for (int w = 0; w <= 30; ++w) {
        auto b = ball(g, v, w);
        CHECK(b.size() >= prev);
        for (int d : b.distances) CHECK(d <= w);
        prev = b.size();
      }
      CHECK(static_cast<int>(prev) == comp_size);
    }
  }
}

TEST_CASE("cycle census examples") {
  auto forest = graphs::disjoint_union(graphs::star(3), graphs::path(4));
  auto c = cycle_census(forest, 2);
  CHECK(c.cyclic_ball_vertices == 0);
  CHECK(c.max_ball_size == 4);

  CHECK(cycle_census(graphs::cycle(3), 1).cyclic_ball_vertices == 3);
  CHECK(cycle_census(graphs::cycle(3), 1).max_ball_size == 3);
  auto tri_iso = graphs::disjoint_union(graphs::cycle(3), graphs::empty(1));
  auto c2 = cycle_census(tri_iso, 1);
  CHECK(c2.cyclic_ball_vertices == 3);
  CHECK(c2.max_ball_size == 3);
}

TEST_CASE("cycle census vanishes iff components within range are trees") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = sample_gnm(12, 6 + trial % 8, rng);
    // With radius n every ball is a full component.
    CHECK((cycle_census(g, g.n()).cyclic_ball_vertices == 0) == g.is_forest());
  }
}

TEST_CASE("pairwise ball disjointness") {
  Graph p = graphs::path(3);
  std::vector<Vertex> one{1};
  CHECK(pairwise_ball_disjoint(p, one, 5));
  std::vector<Vertex> ends{0, 2};
  CHECK_FALSE(pairwise_ball_disjoint(p, ends, 1));
  CHECK(pairwise_ball_disjoint(p, ends, 0));
  Graph two = Graph(4, {{0, 1}, {2, 3}});
  std::vector<Vertex> roots{0, 3};
  CHECK(pairwise_ball_disjoint(two, roots, 1));
  std::vector<Vertex> dup{1, 1};
  CHECK_THROWS_AS(pairwise_ball_disjoint(p, dup, 1), ParameterError);
}

TEST_CASE("graph JSON form is canonical") {
  Graph g(4, {{2, 3}, {1, 0}, {0, 2}});
  CHECK(graph_to_json_string(g) == R"({"n":4,"edges":[[0,1],[0,2],[2,3]]})");
  Graph back = nlohmann::json::parse(graph_to_json_string(g)).get<Graph>();
  CHECK(back == g);
}
