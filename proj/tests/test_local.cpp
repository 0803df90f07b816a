#include <doctest.h>

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "replab/canonical.hpp"
#include "replab/errors.hpp"
#include "replab/local.hpp"
#include "replab/replica.hpp"
#include "replab/tree.hpp"
#include "test_support.hpp"

using namespace replab;
using replab::testing::rooted_isomorphic;

namespace {

// All proper k-colorings by scanning k^n maps; no pruning, no enumerator.
std::vector<Coloring> raw_colorings(const Graph& g, int k) {
  std::vector<Coloring> out;
  std::vector<int> c(g.n(), 1);
  for (;;) {
    Coloring s(k, c);
    if (is_proper(g, s)) out.push_back(s);
    int i = 0;
    while (i < g.n() && c[i] == k) c[i++] = 1;
    if (i == g.n()) break;
    ++c[i];
  }
  return out;
}

// Triangle 0,1,2 with the path 2-3-4-5 hanging off vertex 2.
Graph triangle_pendant() { return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}); }

RootedColoredTree edge_shape() { return trees::star(1); }  // root + 1 child

Graph random_forest(int n, Rng& rng) {
  std::vector<int> parent(n, -1);
  for (int v = 1; v < n; ++v)
    parent[v] = uniform01(rng) < 0.3 ? -1 : static_cast<int>(uniform_below(rng, v));
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v)
    if (parent[v] >= 0) e.emplace_back(parent[v], v);
  return Graph(n, e);
}

// Brute-force <t>_v: fraction of colorings whose ball at v is isomorphic to (theta, tau).
double brute_mean_indicator(const Graph& g, const std::vector<Coloring>& all, Vertex v, int omega,
                            const RootedColoredTree& theta, const Coloring& tau) {
  RootedBall b = ball(g, v, omega);
  std::vector<int> loc(g.n(), -1);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) loc[b.vertices[i]] = static_cast<int>(i);
  std::vector<Edge> e;
  for (auto [x, y] : b.edges) e.emplace_back(loc[x], loc[y]);
  Graph bg(static_cast<int>(b.size()), e);
  Graph tg = theta.graph();
  if (bg.n() != tg.n()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : all) {
    std::vector<int> r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = s[b.vertices[i]];
    Coloring rs(s.k, r);
    if (rooted_isomorphic(bg, 0, {&rs}, tg, 0, {&tau})) ++hits;
  }
  return static_cast<double>(hits) / all.size();
}

}  // namespace

TEST_CASE("q_statistic on single vertices") {
  Rng rng(1);
  auto cg = sample_colorable_gnm(30, 20, 3, rng);
  Coloring s1 = cg.sampler.sample(rng), s2 = cg.sampler.sample(rng);
  DicoloredGraph dg(cg.graph, s1, s2);
  RootedColoredTree v;
  for (int c1 = 1; c1 <= 3; ++c1)
    for (int c2 = 1; c2 <= 3; ++c2) {
      int expect = 0;
      for (int u = 0; u < 30; ++u) expect += s1[u] == c1 && s2[u] == c2;
      CHECK(q_statistic(dg, v, Coloring(3, {c1}), Coloring(3, {c2}), 0) == doctest::Approx(expect / 30.0));
    }
  DicoloredGraph same(cg.graph, s1, s1);
  CHECK(q_statistic(same, v, Coloring(3, {1}), Coloring(3, {2}), 0) == 0.0);
}

TEST_CASE("q_statistic classes partition the vertices") {
  Rng rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    auto dg = sample_planted_replica(60, 60, 3, rng);
    for (int omega : {0, 1, 2}) {
      double total = 0.0;
      for (const auto& [key, f] : q_class_frequencies(dg, omega)) total += f;
      CHECK(total == doctest::Approx(1.0));
    }
    // The edge shape has no colored automorphisms, so its 6 x 6 coloring pairs are
    // distinct classes and their q values add up to the fraction of leaves.
    RootedColoredTree theta = edge_shape();
    double sum = 0.0;
    for (const auto& t1 : enumerate_colorings(theta.graph(), 3))
      for (const auto& t2 : enumerate_colorings(theta.graph(), 3)) {
        sum += q_statistic(dg, theta, t1, t2, 1);
      }
    int leaves = 0;
    for (int u = 0; u < 60; ++u) leaves += dg.graph.degree(u) == 1;
    CHECK(sum == doctest::Approx(leaves / 60.0));
  }
}

TEST_CASE("colored orbit fractions") {
  auto s2 = trees::star(2);
  CHECK(colored_orbit_fraction(s2, Coloring(3, {1, 2, 2}), 3) == Rational(1, 12));
  CHECK(colored_orbit_fraction(s2, Coloring(3, {1, 2, 3}), 3) == Rational(2, 12));
  CHECK(colored_orbit_fraction(edge_shape(), Coloring(3, {2, 1}), 3) == Rational(1, 6));
  // brute force: fraction of colorings isomorphic to tau
  auto t = RootedColoredTree({-1, 0, 0, 1, 2});
  auto all = enumerate_colorings(t.graph(), 3);
  Graph tg = t.graph();
  for (const auto& tau : all) {
    int hits = 0;
    for (const auto& s : all) hits += rooted_isomorphic(tg, 0, {&s}, tg, 0, {&tau});
    CHECK(colored_orbit_fraction(t, tau, 3) == Rational(hits, static_cast<int>(all.size())));
  }
}

TEST_CASE("empirical_local_distribution: trivial graphs") {
  std::vector<Vertex> r0{0}, r01{0, 1};
  auto d1 = empirical_local_distribution(graphs::empty(1), r0, 0, 3);
  CHECK(d1.support.size() == 3);
  for (const auto& [t, p] : d1.support) CHECK(p == Rational(1, 3));
  auto d2 = empirical_local_distribution(graphs::empty(2), r01, 0, 3);
  CHECK(d2.support.size() == 9);
  for (const auto& [t, p] : d2.support) CHECK(p == Rational(1, 9));
  CHECK(d2.total() == 1);
  CHECK_THROWS_AS(empirical_local_distribution(graphs::complete(4), r0, 1, 3), DomainError);
  CHECK_THROWS_AS(empirical_local_distribution(graphs::empty(2), std::vector<Vertex>{5}, 0, 3), ParameterError);
}

TEST_CASE("empirical_local_distribution: antipodal roots on the 6-cycle") {
  Graph c6 = graphs::cycle(6);
  std::vector<Vertex> roots{0, 3};
  auto d = empirical_local_distribution(c6, roots, 1, 3);
  auto all = raw_colorings(c6, 3);
  REQUIRE(all.size() == 66);
  RootedBall b0 = ball(c6, 0, 1), b3 = ball(c6, 3, 1);
  std::map<std::vector<LocalCode>, int> oracle;
  for (const auto& s : all) ++oracle[{canonical_code(b0, &s), canonical_code(b3, &s)}];
  REQUIRE(oracle.size() == d.support.size());
  for (const auto& [t, c] : oracle) CHECK(d.support.at(t) == Rational(c, 66));
  // Each ball is a path centered at the root with exchangeable leaves. The rest of
  // the cycle is a 4-edge path between the leaves: 6 colorings when the leaves
  // agree, 5 when they differ. So 6 classes of weight 6/66 and 3 of weight 2*5/66;
  // the marginal is not uniform over the 12 ball colorings.
  for (int i : {0, 1}) {
    auto m = d.marginal(i);
    int singles = 0, doubles = 0;
    for (const auto& [t, p] : m.support) {
      singles += p == Rational(6, 66);
      doubles += p == Rational(10, 66);
    }
    CHECK(singles == 6);
    CHECK(doubles == 3);
  }
  nlohmann::json j = d;
  CHECK(j["arity"] == 2);
  CHECK(j["support"].size() == d.support.size());
}

TEST_CASE("empirical_local_distribution factorizes over components") {
  Graph g = graphs::disjoint_union(graphs::path(4), graphs::star(3));
  std::vector<Vertex> roots{1, 4};
  auto d = empirical_local_distribution(g, roots, 2, 3);
  auto a = d.marginal(0), b = d.marginal(1);
  CHECK(d.support.size() == a.support.size() * b.support.size());
  for (const auto& [t, p] : d.support) CHECK(p == a.support.at({t[0]}) * b.support.at({t[1]}));

  Rng rng(5);
  auto mc = empirical_local_distribution(g, roots, 2, 3, LocalMode::mc, 20000, &rng);
  CHECK_FALSE(mc.exact);
  CHECK(mc.total() == 1);
  for (const auto& [t, p] : mc.support) {
    double q = to_double(d.support.at(t));
    CHECK(std::abs(to_double(p) - q) <= 5 * std::sqrt(q * (1 - q) / 20000) + 1e-12);
  }
}

TEST_CASE("tv_local_vs_uniform") {
  Rng rng(7);
  // On a forest the projection is uniform when each component of the union lies
  // in its own component of g: one root, or roots in different trees.
  for (int rep = 0; rep < 20; ++rep) {
    Graph f = random_forest(8, rng);
    auto comp = f.components();
    Vertex a = static_cast<Vertex>(uniform_below(rng, 8));
    for (int omega : {0, 1, 2, -1}) CHECK(tv_local_vs_uniform(f, std::vector<Vertex>{a}, omega, 3).tv == 0);
    for (Vertex b = 0; b < 8; ++b)
      if (comp[b] != comp[a])
        for (int omega : {0, 1, 2}) CHECK(tv_local_vs_uniform(f, std::vector<Vertex>{a, b}, omega, 3).tv == 0);
  }
  // Independent oracle: project the raw scan onto the union and compare with its own raw scan.
  auto oracle = [](const Graph& g, std::vector<Vertex> roots, int omega, int k) {
    std::vector<int> in(g.n(), 0);
    std::vector<Edge> ue;
    for (Vertex r : roots) {
      auto b = ball(g, r, omega);
      for (Vertex v : b.vertices) in[v] = 1;
      ue.insert(ue.end(), b.edges.begin(), b.edges.end());
    }
    auto all = raw_colorings(g, k);
    std::map<std::vector<int>, double> proj;
    for (const auto& s : all) {
      std::vector<int> r;
      for (int v = 0; v < g.n(); ++v) r.push_back(in[v] ? s[v] : 0);
      proj[r] += 1.0 / all.size();
    }
    // uniform on proper colorings of the union, embedded with zeros elsewhere
    Graph u(g.n(), ue);
    std::map<std::vector<int>, double> unif;
    std::vector<Coloring> ucol;
    for (const auto& s : raw_colorings(u, k)) {
      std::vector<int> r;
      for (int v = 0; v < g.n(); ++v) r.push_back(in[v] ? s[v] : 0);
      unif[r] += 1.0;
    }
    double zu = 0;
    for (auto& [r, c] : unif) zu += c;
    double tv = 0;
    for (auto& [r, c] : unif) {
      double p = proj.count(r) ? proj[r] : 0.0;
      tv += std::abs(p - c / zu);
    }
    return tv / 2;
  };
  Graph tp = triangle_pendant();
  for (int omega : {1, 2, 3}) {
    auto r = tv_local_vs_uniform(tp, std::vector<Vertex>{5}, omega, 3);
    CHECK(r.value == doctest::Approx(oracle(tp, {5}, omega, 3)).epsilon(1e-12));
    CHECK_FALSE(r.flagged());
  }
  auto cyc = tv_local_vs_uniform(tp, std::vector<Vertex>{5}, 5, 3);
  CHECK(cyc.flagged());
  // A 4-cycle ball: the two leaves of the path 1-0-3 are correlated through vertex 2.
  Graph c4 = graphs::cycle(4);
  auto r4 = tv_local_vs_uniform(c4, std::vector<Vertex>{0}, 1, 3);
  CHECK(r4.value > 0.05);
  CHECK(r4.value == doctest::Approx(oracle(c4, {0}, 1, 3)).epsilon(1e-12));
  // Two roots in one tree, balls disjoint but not joined by the union: correlated.
  Graph p5 = graphs::path(5);
  auto rp = tv_local_vs_uniform(p5, std::vector<Vertex>{0, 2}, 0, 3);
  CHECK_FALSE(rp.flagged());
  CHECK(rp.tv == Rational(1, 6));  // P[same color] = 1/2 instead of 1/3
  CHECK(rp.value == doctest::Approx(oracle(p5, {0, 2}, 0, 3)).epsilon(1e-12));
  auto dup = tv_local_vs_uniform(p5, std::vector<Vertex>{1, 1}, 1, 3);
  CHECK_FALSE(dup.balls_disjoint);
  CHECK(dup.tv == 0);
  Graph c6 = graphs::cycle(6);
  auto r6 = tv_local_vs_uniform(c6, std::vector<Vertex>{0, 2}, 1, 3);
  CHECK(r6.flagged());
  CHECK_FALSE(r6.balls_disjoint);
  CHECK(r6.value == doctest::Approx(oracle(c6, {0, 2}, 1, 3)).epsilon(1e-12));
  auto r6b = tv_local_vs_uniform(c6, std::vector<Vertex>{0, 3}, 1, 3);
  CHECK(r6b.value == doctest::Approx(oracle(c6, {0, 3}, 1, 3)).epsilon(1e-12));
}

TEST_CASE("replica_local_covariance") {
  // forest: zero for every shape and coloring, symmetric ones included
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    Graph f = random_forest(7, rng);
    for (auto theta : {RootedColoredTree(), edge_shape(), trees::star(2), trees::path(3)})
      for (const auto& tau : enumerate_colorings(theta.graph(), 3)) {
        CHECK(replica_local_covariance(f, theta, tau, theta.height(), 3) == doctest::Approx(0.0).epsilon(1e-15));
      }
  }
  // triangle + pendant, theta = star with two leaves at omega = 1, against brute force
  Graph tp = triangle_pendant();
  auto all = raw_colorings(tp, 3);
  auto s2 = trees::star(2);
  for (const auto& tau : enumerate_colorings(s2.graph(), 3)) {
    double p = to_double(colored_orbit_fraction(s2, tau, 3)), expect = 0.0;
    for (Vertex v = 0; v < tp.n(); ++v) {
      auto b = ball(tp, v, 1);
      if (b.size() != 3 || b.has_cycle()) continue;
      double t = brute_mean_indicator(tp, all, v, 1, s2, tau);
      expect += (t - p) * (t - p);
    }
    expect /= tp.n();
    CHECK(replica_local_covariance(tp, s2, tau, 1, 3) == doctest::Approx(expect).epsilon(1e-12));
  }
  // covariance form = squared-bias form, nonnegative
  for (int rep = 0; rep < 100; ++rep) {
    Graph g = sample_gnm(6, 4 + uniform_below(rng, 4), rng);
    if (!is_colorable(g, 3)) continue;
    auto theta = rep % 2 ? edge_shape() : trees::star(2);
    auto taus = enumerate_colorings(theta.graph(), 3);
    const auto& tau = taus[uniform_below(rng, taus.size())];
    double a = replica_local_covariance(g, theta, tau, 1, 3);
    double b = replica_local_covariance_pairwise(g, theta, tau, 1, 3);
    CHECK(a >= 0.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
  }
}

TEST_CASE("product_statistic") {
  RootedColoredTree v;
  std::vector<ColoredShape> one{{v, Coloring(3, {2})}};
  Graph g = graphs::cycle(7);
  CHECK(product_statistic_exact(g, one, 0, 3) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  Rng rng(13);
  auto est = product_statistic(g, one, 0, 3, 4000, rng);
  CHECK(std::abs(est.value - 1.0 / 3) <= 4 * est.std_error);

  // two shapes living in different components
  Graph u = graphs::disjoint_union(graphs::star(3), graphs::path(3));
  auto st3 = trees::star(3);
  auto p3 = trees::path(3);
  ColoredShape a{st3, Coloring(3, {1, 2, 2, 3})}, b{p3, Coloring(3, {2, 1, 3})};
  std::vector<ColoredShape> sa{a}, sb{b}, ab{a, b};
  double xa = product_statistic_exact(u, sa, 2, 3), xb = product_statistic_exact(u, sb, 2, 3);
  CHECK(xa > 0);
  CHECK(xb > 0);
  CHECK(product_statistic_exact(u, ab, 2, 3) == doctest::Approx(xa * xb).epsilon(1e-12));
  CHECK_THROWS_AS(product_statistic(u, std::vector<ColoredShape>{}, 1, 3, 10, rng), ParameterError);
}

TEST_CASE("reconstruction on graphs") {
  Graph e = graphs::path(2);
  CHECK(reconstruction_corr_graph(e, 0, 1, 3) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  for (int w : {0, 1, 2, 5}) CHECK(reconstruction_corr_graph(graphs::empty(1), 0, w, 3) == (w == 0 ? doctest::Approx(2.0 / 3) : doctest::Approx(0.0)));
  // ball covering the component: nothing fixed
  CHECK(reconstruction_corr_graph(graphs::cycle(5), 0, 3, 3) == doctest::Approx(0.0));
  CHECK(reconstruction_corr_graph(graphs::petersen(), 0, 3, 3) == doctest::Approx(0.0));
  CHECK_THROWS_AS(reconstruction_corr_graph(graphs::complete(4), 0, 1, 3), DomainError);

  // MC with sampled boundary, exact conditional marginals
  Graph c6 = graphs::cycle(6);
  double exact = reconstruction_corr_graph(c6, 0, 2, 3);
  Rng rng(17);
  auto mc = reconstruction_corr_graph_mc(c6, 0, 2, 3, 20000, rng);
  CHECK(std::abs(mc.value - exact) <= 4 * mc.std_error + 1e-12);
  CHECK(reconstruction_corr_graph_mc(e, 0, 1, 3, 50, rng).value == doctest::Approx(1.0 / 3));
}

TEST_CASE("reconstruction on fixed trees") {
  // star with c leaves, omega = 1, brute force over all colorings of the star
  for (int c = 1; c <= 5; ++c) {
    auto st = trees::star(c);
    auto all = raw_colorings(st.graph(), 3);
    std::map<std::vector<int>, std::vector<double>> groups;
    for (const auto& s : all) {
      std::vector<int> leaves(s.colors.begin() + 1, s.colors.end());
      auto& g = groups[leaves];
      g.resize(3, 0.0);
      g[s[0] - 1] += 1;
    }
    double corr = 0;
    for (auto& [leaves, cnt] : groups) {
      double z = cnt[0] + cnt[1] + cnt[2], bias = 0;
      for (double x : cnt) bias += std::abs(x / z - 1.0 / 3);
      corr += z / all.size() * bias / 2;
    }
    CHECK(reconstruction_corr_fixed_tree(st, 1, 3) == doctest::Approx(corr).epsilon(1e-12));
  }
  // graph enumeration vs tree DP on random trees
  Rng rng(19);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(uniform_below(rng, 9));
    std::vector<int> parent(n, -1);
    for (int v = 1; v < n; ++v) parent[v] = static_cast<int>(uniform_below(rng, v));
    RootedColoredTree t(parent);
    for (int w = 0; w <= t.height() + 1; ++w)
      CHECK(std::abs(reconstruction_corr_graph(t.graph(), 0, w, 3) - reconstruction_corr_fixed_tree(t, w, 3)) <
            1e-10);
  }
}

TEST_CASE("reconstruction on GW trees") {
  Rng rng(23);
  CHECK(reconstruction_corr_tree(0.0, 1, 3, 100, rng).value == 0.0);
  auto prof = reconstruction_corr_tree_profile(0.0, 3, 3, 50, 1, 1);
  for (const auto& e : prof) CHECK(e.value == 0.0);
  auto a = reconstruction_corr_tree_profile(0.5, 4, 3, 2000, 9, 1);
  auto b = reconstruction_corr_tree_profile(0.5, 4, 3, 2000, 9, 3);
  for (int w = 0; w < 4; ++w) CHECK(a[w].value == b[w].value);
  // common random numbers: monotone non-increasing in omega per tree
  for (int w = 1; w < 4; ++w) CHECK(a[w].value <= a[w - 1].value + 1e-12);
  // omega = 1 at d: E over Po(d) children of the star value
  double expect = 0.0;
  for (int c = 0; c < 14; ++c) expect += poisson_pmf(0.5, c) * (c == 0 ? 0.0 : reconstruction_corr_fixed_tree(trees::star(c), 1, 3));
  CHECK(std::abs(a[0].value - expect) <= 4 * a[0].std_error);
}

TEST_CASE("planted replica Q against q_target") {
  Rng rng(29);
  auto theta = edge_shape();
  auto taus = enumerate_colorings(theta.graph(), 3);
  std::vector<RunningStats> st(taus.size() * taus.size());
  for (int s = 0; s < 200; ++s) {
    auto dg = sample_planted_replica(300, 300, 3, rng);
    for (std::size_t i = 0; i < taus.size(); ++i)
      for (std::size_t j = 0; j < taus.size(); ++j) st[i * taus.size() + j].add(q_statistic(dg, theta, taus[i], taus[j], 1));
  }
  for (std::size_t i = 0; i < taus.size(); ++i)
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const auto& r = st[i * taus.size() + j];
      double q = q_target(theta, taus[i], taus[j], 2.0, 1, 3);
      CHECK(std::abs(r.mean() - q) <= 3 * r.std_error() + 5.0 / 300);
    }
}
