#include "replab/replica.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "replab/errors.hpp"

namespace replab {

DicoloredGraph::DicoloredGraph(Graph g, Coloring s1, Coloring s2)
    : graph(std::move(g)), sigma1(std::move(s1)), sigma2(std::move(s2)) {
  if (sigma1.k != sigma2.k) throw ParameterError("dicolored graph: colorings use different k");
  if (sigma1.n() != graph.n() || sigma2.n() != graph.n())
    throw ParameterError("dicolored graph: coloring size does not match the graph");
  if (!is_proper(graph, sigma1) || !is_proper(graph, sigma2))
    throw ParameterError("dicolored graph: colorings must be proper");
}

void to_json(nlohmann::json& j, const DicoloredGraph& dg) {
  j = nlohmann::json::object();
  j["graph"] = dg.graph;
  j["sigma1"] = dg.sigma1;
  j["sigma2"] = dg.sigma2;
  j["k"] = dg.k();
}

DicoloredGraph dicolored_from_json(const nlohmann::json& j) {
  try {
    int k = j.at("k").get<int>();
    Graph g = j.at("graph").get<Graph>();
    return DicoloredGraph(std::move(g), Coloring(k, j.at("sigma1").get<std::vector<int>>()),
                          Coloring(k, j.at("sigma2").get<std::vector<int>>()));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("dicolored graph JSON: ") + e.what());
  }
}

namespace {

bool bichromatic(const Coloring& a, const Coloring& b, Vertex u, Vertex v) { return a[u] != a[v] && b[u] != b[v]; }

// Least F(sigma) over maps [n] -> [k]: balanced classes.
std::uint64_t balanced_forbidden(int n, int k) {
  std::uint64_t f = 0;
  for (int i = 0; i < k; ++i) {
    std::uint64_t s = static_cast<std::uint64_t>(n / k + (i < n % k ? 1 : 0));
    f += s * (s - (s > 0)) / 2;
  }
  return f;
}

void check_common(int n, int k) {
  if (n < 0) throw ParameterError("n must be non-negative");
  if (k < 1) throw ParameterError("k must be at least 1");
}

}  // namespace

DicoloredGraph sample_planted_replica(int n, std::uint64_t m, int k, Rng& rng, const PlantedOptions& options) {
  check_common(n, k);
  const std::uint64_t pairs = pair_count(n);
  if (m > pairs) throw ParameterError("sample_planted_replica: m exceeds C(n,2)");
  if (balanced_forbidden(n, k) > pairs - m)
    throw DomainError("sample_planted_replica: no pair of maps leaves m doubly bichromatic pairs");
  for (std::uint64_t attempt = 0; attempt < options.max_rejections; ++attempt) {
    Coloring s1 = sample_uniform_map(n, k, rng), s2 = sample_uniform_map(n, k, rng);
    const std::uint64_t allowed = pairs - forbidden_count_pair(s1, s2);
    if (allowed < m) continue;
    // A uniformly shuffled stream of all pairs, filtered, yields a uniform m-subset.
    std::vector<Edge> edges;
    edges.reserve(m);
    PairShuffler shuffle(n);
    while (edges.size() < m) {
      Edge e = shuffle.next(rng);
      if (bichromatic(s1, s2, e.first, e.second)) edges.push_back(e);
    }
    return DicoloredGraph(Graph(n, std::move(edges)), std::move(s1), std::move(s2));
  }
  throw RetryExhaustedError("sample_planted_replica: " + std::to_string(options.max_rejections) +
                            " color pairs rejected");
}

BigInt planted_valid_pairs(int n, std::uint64_t m, int k, std::uint64_t budget) {
  check_common(n, k);
  const std::uint64_t pairs = pair_count(n);
  if (m > pairs) return 0;
  const int cells = k * k;
  BigInt tables = binomial(BigInt(n + cells - 1), static_cast<std::uint64_t>(cells - 1));
  if (tables > budget)
    throw CapacityError("planted_density: " + tables.str() + " intersection tables exceed the budget");
  std::vector<BigInt> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  auto c2 = [](std::uint64_t x) { return x * (x - (x > 0)) / 2; };
  std::vector<int> t(cells, 0);
  BigInt total = 0;
  auto rec = [&](auto&& self, int cell, int left) -> void {
    if (cell == cells - 1) {
      t[cell] = left;
      std::uint64_t f = 0;
      for (int i = 0; i < k; ++i) {
        std::uint64_t row = 0, col = 0;
        for (int j = 0; j < k; ++j) {
          row += t[i * k + j];
          col += t[j * k + i];
        }
        f += c2(row) + c2(col);
      }
      BigInt ways = fact[n];
      for (int x : t) {
        f -= c2(x);
        ways /= fact[x];
      }
      if (f <= pairs - m) total += ways;
      return;
    }
    for (int x = 0; x <= left; ++x) {
      t[cell] = x;
      self(self, cell + 1, left - x);
    }
  };
  rec(rec, 0, n);
  return total;
}

Rational planted_density(const Graph& g, const Coloring& sigma1, const Coloring& sigma2, int n, std::uint64_t m,
                         int k, std::uint64_t budget) {
  BigInt valid = planted_valid_pairs(n, m, k, budget);
  if (g.n() != n || g.m() != m || valid == 0) return 0;
  if (sigma1.k != k || sigma2.k != k || sigma1.n() != n || sigma2.n() != n) return 0;
  if (!is_proper(g, sigma1) || !is_proper(g, sigma2)) return 0;
  const std::uint64_t allowed = pair_count(n) - forbidden_count_pair(sigma1, sigma2);
  return Rational(BigInt(1), valid * binomial(BigInt(allowed), m));
}

Rational planted_density(const DicoloredGraph& dg, int n, std::uint64_t m, int k, std::uint64_t budget) {
  return planted_density(dg.graph, dg.sigma1, dg.sigma2, n, m, k, budget);
}

namespace {

// Calls f(i) for each i in [0, count) selected independently with probability p.
template <typename F>
void bernoulli_landings(std::uint64_t count, double p, Rng& rng, F&& f) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t i = 0;
  for (;;) {
    std::uint64_t gap = skip(rng);
    if (gap >= count - i) return;
    i += gap;
    f(i);
    if (++i >= count) return;
  }
}

void check_probability(double p, const char* who) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(who) + ": p must lie in [0, 1]");
}

}  // namespace

DicoloredGraph sample_binomial_planted(int n, double p, int k, Rng& rng) {
  check_common(n, k);
  check_probability(p, "sample_binomial_planted");
  Coloring s1 = sample_uniform_map(n, k, rng), s2 = sample_uniform_map(n, k, rng);
  std::vector<Edge> edges;
  bernoulli_landings(pair_count(n), p, rng, [&](std::uint64_t idx) {
    Edge e = pair_from_index(n, idx);
    if (bichromatic(s1, s2, e.first, e.second)) edges.push_back(e);
  });
  return DicoloredGraph(Graph(n, std::move(edges)), std::move(s1), std::move(s2));
}

double lemma42_p(int n, std::uint64_t m, int k) {
  if (k < 1) throw ParameterError("lemma42_p: k must be positive");
  double pairs = static_cast<double>(pair_count(std::max(n, 0)));
  double q = 1.0 - 1.0 / k;
  if (m == 0) return 0.0;
  if (pairs == 0.0 || q == 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(m) / (pairs * q * q);
}

ColorableGraph sample_colorable_gnm(int n, std::uint64_t m, int k, Rng& rng, const RandomReplicaOptions& options) {
  check_common(n, k);
  if (m > pair_count(n)) throw ParameterError("sample_random_replica: m exceeds C(n,2)");
  for (std::uint64_t attempt = 0; attempt < options.max_retries; ++attempt) {
    Graph g = sample_gnm(n, m, rng);
    try {
      UniformColoringSampler sampler(g, k, options.sampler);
      return {std::move(g), std::move(sampler)};
    } catch (const DomainError&) {
      // not k-colorable
    }
  }
  throw RetryExhaustedError("sample_random_replica: no " + std::to_string(k) + "-colorable graph in " +
                            std::to_string(options.max_retries) + " draws");
}

DicoloredGraph sample_random_replica(int n, std::uint64_t m, int k, Rng& rng, const RandomReplicaOptions& options) {
  auto cg = sample_colorable_gnm(n, m, k, rng, options);
  Coloring s1 = cg.sampler.sample(rng);
  Coloring s2 = cg.sampler.sample(rng);
  return DicoloredGraph(std::move(cg.graph), std::move(s1), std::move(s2));
}

ExplorationResult explore_coupling(int n, double p, int k, int omega, Rng& rng, const ExplorationOptions& options) {
  if (n < 1) throw ParameterError("explore_coupling: n must be positive");
  if (k < 1) throw ParameterError("explore_coupling: k must be positive");
  if (omega < 0) throw ParameterError("explore_coupling: omega must be non-negative");
  check_probability(p, "explore_coupling");

  // Only touched vertices get state; everything else is unborn and uncolored.
  struct State {
    Mark mark = Mark::unborn;
    int dist = INT_MAX;
    int tree_id = -1;
    int processed = -1;
    int c1 = 0, c2 = 0;
  };
  std::unordered_map<Vertex, State> state;
  ExplorationResult res;
  std::vector<int> parent, birth;
  std::unordered_set<std::uint64_t> landed;
  auto key = [n](Vertex x, Vertex y) { return pair_index(n, std::min(x, y), std::max(x, y)); };
  auto set_mark = [&](Vertex v, State& s, Mark to) {
    if (options.trace) res.marks_trace.push_back({v, s.mark, to});
    s.mark = to;
  };
  auto draw_pair = [&](State& s) {
    s.c1 = 1 + static_cast<int>(uniform_below(rng, k));
    s.c2 = 1 + static_cast<int>(uniform_below(rng, k));
  };
  auto born = [&](Vertex w, State& s, int par, int step) {
    s.tree_id = static_cast<int>(res.tree_vertices.size());
    res.tree_vertices.push_back(w);
    parent.push_back(par);
    birth.push_back(step);
  };

  // random root, colors drawn on birth
  const Vertex root = static_cast<Vertex>(uniform_below(rng, n));
  res.root = root;
  {
    State& s = state[root];
    draw_pair(s);
    s.dist = 0;
    born(root, s, -1, -1);
    set_mark(root, s, Mark::alive);
  }
  std::set<Vertex> active;  // alive with D < omega, least label first
  if (omega > 0) active.insert(root);

  // process the least alive vertex below depth omega
  for (int step = 0; !active.empty(); ++step) {
    const Vertex v = *active.begin();
    active.erase(active.begin());
    State& sv = state[v];
    sv.processed = step;
    std::vector<Vertex> next;
    // Coins for alive or dead vertices are irrelevant, so landings there are dropped.
    bernoulli_landings(static_cast<std::uint64_t>(n), p, rng, [&](std::uint64_t idx) {
      const Vertex w = static_cast<Vertex>(idx);
      State& sw = state[w];
      if (sw.mark == Mark::unborn) {
        landed.insert(key(v, w));
        draw_pair(sw);
        sw.dist = sv.dist + 1;
        if (sw.c1 != sv.c1 && sw.c2 != sv.c2) {
          born(w, sw, sv.tree_id, step);
          set_mark(w, sw, Mark::alive);
          if (sw.dist < omega) next.push_back(w);
        } else {
          set_mark(w, sw, Mark::rejected);
        }
      } else if (sw.mark == Mark::rejected) {
        landed.insert(key(v, w));
        res.no_rejected_hit = false;
      }
    });
    set_mark(v, sv, Mark::dead);
    active.insert(next.begin(), next.end());
  }

  const int size = static_cast<int>(res.tree_vertices.size());
  std::vector<int> t1(size), t2(size);
  for (int i = 0; i < size; ++i) {
    const State& s = state[res.tree_vertices[i]];
    t1[i] = s.c1;
    t2[i] = s.c2;
  }
  res.tree = RootedColoredTree(parent);
  res.tree.set_coloring(1, Coloring(k, std::move(t1)));
  res.tree.set_coloring(2, Coloring(k, std::move(t2)));

  const double threshold = options.size_threshold < 0 ? std::pow(static_cast<double>(n), 0.1) : options.size_threshold;
  res.small = size <= threshold;

  // A pair was inspected if one endpoint was processed while the other was still unborn or rejected.
  auto inspected_from = [&](Vertex v, Vertex w) {
    auto iv = state.find(v);
    if (iv == state.end() || iv->second.processed < 0) return false;
    auto iw = state.find(w);
    return iw == state.end() || iw->second.tree_id < 0 || birth[iw->second.tree_id] >= iv->second.processed;
  };
  auto inspected = [&](Vertex x, Vertex y) { return inspected_from(x, y) || inspected_from(y, x); };

  // Pairs inside the tree that the exploration never looked at.
  std::unordered_map<std::uint64_t, bool> decided;
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      if (parent[b] == a) continue;
      Vertex x = res.tree_vertices[a], y = res.tree_vertices[b];
      if (inspected(x, y)) continue;
      bool coin = uniform01(rng) < p;
      decided[key(x, y)] = coin;
      const State &sx = state[x], &sy = state[y];
      if (coin && sx.c1 != sy.c1 && sx.c2 != sy.c2) res.acyclic = false;
    }
  res.coupling_ok = res.acyclic && res.small && res.no_rejected_hit;

  if (options.complete_graph) {
    std::vector<int> c1(n), c2(n);
    for (Vertex v = 0; v < n; ++v) {
      State& s = state[v];
      if (!s.c1) draw_pair(s);
      c1[v] = s.c1;
      c2[v] = s.c2;
    }
    std::vector<Edge> edges;
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y) {
        std::uint64_t idx = pair_index(n, x, y);
        bool coin;
        if (inspected(x, y))
          coin = landed.count(idx) > 0;
        else if (auto it = decided.find(idx); it != decided.end())
          coin = it->second;
        else
          coin = uniform01(rng) < p;
        if (coin && c1[x] != c1[y] && c2[x] != c2[y]) edges.emplace_back(x, y);
      }
    res.completed.emplace(Graph(n, std::move(edges)), Coloring(k, std::move(c1)), Coloring(k, std::move(c2)));
  }
  return res;
}

}  // namespace replab
