#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/stats.hpp"

namespace replab::testing {

// |freq - p| <= 3 sigma for a Binomial(trials, p) count.
inline bool within_three_sigma(std::uint64_t hits, std::uint64_t trials, double p) {
  double freq = static_cast<double>(hits) / static_cast<double>(trials);
  double sigma = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  return std::abs(freq - p) <= 3 * sigma;
}

// Chi-square goodness of fit against equal cell probabilities.
inline double uniform_p_value(const std::vector<std::uint64_t>& counts) {
  std::vector<double> expected(counts.size(), 1.0 / static_cast<double>(counts.size()));
  return chi_square_test(counts, expected).p_value;
}

// Brute-force rooted isomorphism: backtracking over bijections that fix the
// root and preserve adjacency and every coloring.
inline bool rooted_isomorphic(const Graph& a, Vertex ra, const std::vector<const Coloring*>& ca, const Graph& b,
                              Vertex rb, const std::vector<const Coloring*>& cb) {
  if (a.n() != b.n() || a.m() != b.m() || ca.size() != cb.size()) return false;
  const int n = a.n();
  std::vector<int> map(n, -1), used(n, 0);
  auto compatible = [&](int u, int v) {
    if (a.degree(u) != b.degree(v) || (u == ra) != (v == rb)) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
      if ((*ca[i])[u] != (*cb[i])[v]) return false;
    for (int w = 0; w < n; ++w)
      if (map[w] >= 0 && a.has_edge(u, w) != b.has_edge(v, map[w])) return false;
    return true;
  };
  auto rec = [&](auto&& self, int u) -> bool {
    if (u == n) return true;
    for (int v = 0; v < n; ++v) {
      if (used[v] || !compatible(u, v)) continue;
      map[u] = v;
      used[v] = 1;
      if (self(self, u + 1)) return true;
      map[u] = -1;
      used[v] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace replab::testing
