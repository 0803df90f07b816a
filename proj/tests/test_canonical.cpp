#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "replab/canonical.hpp"
#include "replab/errors.hpp"
#include "test_support.hpp"

using namespace replab;
using replab::testing::rooted_isomorphic;

namespace {

// Relabel g by perm (new id of v is perm[v]).
Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<Edge> e;
  for (const auto& [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
  return Graph(g.n(), e);
}
Coloring relabel(const Coloring& c, const std::vector<int>& perm) {
  std::vector<int> out(c.n());
  for (int v = 0; v < c.n(); ++v) out[perm[v]] = c[v];
  return Coloring(c.k, out);
}

bool connected(const Graph& g) {
  auto comp = g.components();
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

}  // namespace

TEST_CASE("varint and header layout") {
  std::string s;
  detail::put_varint(s, 300);
  CHECK(s == std::string("\xac\x02", 2));
  auto code = canonical_code(RootedColoredTree());
  CHECK(code.bytes == std::string("T\x00\x02()", 5));
  CHECK(code.hex() == "5400022829");
}

TEST_CASE("tree code is stable") {
  // Golden value: root colored 1 with children colored 2 and 3.
  RootedColoredTree t({-1, 0, 0});
  t.set_coloring(1, Coloring(3, {1, 2, 3}));
  CHECK(canonical_code(t).hex() == "540109280128022928032929");
}

TEST_CASE("codes are invariant under relabeling") {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(uniform_below(rng, 9));
    Graph g = sample_gnm(n, std::min<std::uint64_t>(pair_count(n), n + uniform_below(rng, n)), rng);
    auto s1 = sample_uniform_map(n, 2, rng), s2 = sample_uniform_map(n, 3, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h = relabel(g, perm);
    auto t1 = relabel(s1, perm), t2 = relabel(s2, perm);
    for (int r = 0; r < n; ++r) {
      CHECK(canonical_code(g, r, {&s1, &s2}) == canonical_code(h, perm[r], {&t1, &t2}));
      CHECK(canonical_code(g, r) == canonical_code(h, perm[r]));
    }
  }
}

TEST_CASE("rooted paths differ by root position") {
  Graph p = graphs::path(3);
  CHECK(canonical_code(p, 0) != canonical_code(p, 1));
  CHECK(canonical_code(p, 0) == canonical_code(p, 2));
}

TEST_CASE("graph and tree encodings agree on trees") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = broadcast_dicoloring(sample_gw_tree(1.5, 3, rng), 3, rng);
    Graph g = t.graph();
    CHECK(canonical_code(g, 0, {&*t.coloring(1), &*t.coloring(2)}) == canonical_code(t));
    auto b = ball(g, 0, t.height());
    CHECK(canonical_code(b, &*t.coloring(1), &*t.coloring(2)) == canonical_code(t));
  }
}

TEST_CASE("code equality equals brute-force isomorphism on small rooted graphs") {
  // All connected graphs on 4 vertices (as edge subsets), every root, all 2-colorings.
  struct Item {
    Graph g;
    int root;
    Coloring c;
    LocalCode code;
  };
  std::vector<Item> items;
  const int n = 4;
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  for (int mask = 0; mask < (1 << pairs.size()); ++mask) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) e.push_back(pairs[i]);
    Graph g(n, e);
    if (!connected(g)) continue;
    for (int root = 0; root < n; ++root)
      for (int cm = 0; cm < (1 << n); ++cm) {
        std::vector<int> cols(n);
        for (int v = 0; v < n; ++v) cols[v] = 1 + (cm >> v & 1);
        Coloring c(2, cols);
        items.push_back({g, root, c, canonical_code(g, root, {&c})});
      }
  }
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      bool iso = rooted_isomorphic(items[i].g, items[i].root, {&items[i].c}, items[j].g, items[j].root, {&items[j].c});
      mismatches += iso != (items[i].code == items[j].code);
    }
  CHECK(items.size() == 38 * 4 * 16);
  CHECK(mismatches == 0);
}

TEST_CASE("2-colored rooted trees on up to 5 vertices") {
  struct Item {
    Graph g;
    Coloring c;
    LocalCode code;
  };
  std::vector<Item> items;
  for (int n = 1; n <= 5; ++n) {
    // Recursive parent arrays with parent[v] < v cover every rooted tree shape.
    std::vector<int> parent(n, 0);
    parent[0] = -1;
    auto rec = [&](auto&& self, int v) -> void {
      if (v == n) {
        RootedColoredTree t(parent);
        Graph g = t.graph();
        for (int cm = 0; cm < (1 << n); ++cm) {
          std::vector<int> cols(n);
          for (int u = 0; u < n; ++u) cols[u] = 1 + (cm >> u & 1);
          Coloring c(2, cols);
          if (!is_proper(g, c)) continue;
          t.set_coloring(1, c);
          items.push_back({g, c, canonical_code(t)});
        }
        return;
      }
      for (int p = 0; p < v; ++p) {
        parent[v] = p;
        self(self, v + 1);
      }
    };
    rec(rec, 1);
  }
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      bool iso = rooted_isomorphic(items[i].g, 0, {&items[i].c}, items[j].g, 0, {&items[j].c});
      mismatches += iso != (items[i].code == items[j].code);
    }
  CHECK(mismatches == 0);
}

TEST_CASE("cyclic cores") {
  Graph c6 = graphs::cycle(6);
  CHECK_FALSE(canonical_code(c6, 0).is_tree);
  CHECK(canonical_code(c6, 0) == canonical_code(c6, 3));
  // Triangle with a pendant path: root on the path vs on the triangle.
  Graph tp(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(canonical_code(tp, 5) != canonical_code(tp, 0));
  CHECK(canonical_code(tp, 0) == canonical_code(tp, 1));
  CHECK(canonical_code(graphs::petersen(), 0) == canonical_code(graphs::petersen(), 7));
  CanonicalOptions tight;
  tight.max_leaves = 3;
  CHECK_THROWS_AS(canonical_code(graphs::petersen(), 0, {}, tight), CapacityError);
}
