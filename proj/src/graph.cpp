#include "replab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <nlohmann/json.hpp>

#include "replab/errors.hpp"

namespace replab {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw ParameterError("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParameterError("graph: edge endpoint out of range");
    if (u == v) throw ParameterError("graph: self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ParameterError("graph: duplicate edge");
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<int> Graph::components() const {
  std::vector<int> label(n_, -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n_; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adj_[u])
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

bool Graph::is_forest() const {
  auto label = components();
  int count = n_ == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  // A forest has exactly n - (#components) edges.
  return static_cast<long long>(edges_.size()) == static_cast<long long>(n_) - count;
}

int RootedBall::local_index(Vertex v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

std::uint64_t pair_count(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::uint64_t pair_index(std::uint64_t n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  std::uint64_t a = static_cast<std::uint64_t>(u), b = static_cast<std::uint64_t>(v);
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

Edge pair_from_index(std::uint64_t n, std::uint64_t index) {
  // Row u starts at S(u) = u(2n-u-1)/2; pick the largest u with S(u) <= index.
  auto start = [n](std::uint64_t u) { return u * (2 * n - u - 1) / 2; };
  double nd = static_cast<double>(n);
  double guess = ((2 * nd - 1) - std::sqrt((2 * nd - 1) * (2 * nd - 1) - 8.0 * static_cast<double>(index))) / 2;
  std::uint64_t u = guess < 0 ? 0 : static_cast<std::uint64_t>(guess);
  if (u > n - 2) u = n - 2;
  while (u > 0 && start(u) > index) --u;
  while (u + 1 <= n - 2 && start(u + 1) <= index) ++u;
  std::uint64_t v = index - start(u) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

PairShuffler::PairShuffler(int n) : n_(n), total_(pair_count(static_cast<std::uint64_t>(n))) {}

Edge PairShuffler::next(Rng& rng) {
  if (exhausted()) throw ParameterError("pair shuffler exhausted");
  std::uint64_t j = taken_ + uniform_below(rng, total_ - taken_);
  auto value_at = [this](std::uint64_t i) {
    auto it = swaps_.find(i);
    return it == swaps_.end() ? i : it->second;
  };
  std::uint64_t picked = value_at(j);
  swaps_[j] = value_at(taken_);
  swaps_.erase(taken_);
  ++taken_;
  return pair_from_index(static_cast<std::uint64_t>(n_), picked);
}

Graph sample_gnm(int n, std::uint64_t m, Rng& rng) {
  if (n <= 0) throw ParameterError("sample_gnm: n must be positive");
  if (m > pair_count(static_cast<std::uint64_t>(n)))
    throw ParameterError("sample_gnm: m = " + std::to_string(m) + " exceeds C(n,2)");
  PairShuffler shuffler(n);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) edges.push_back(shuffler.next(rng));
  return Graph(n, std::move(edges));
}

Graph sample_gnp(int n, double p, Rng& rng) {
  if (n <= 0) throw ParameterError("sample_gnp: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_gnp: p outside [0,1]");
  std::vector<Edge> edges;
  const std::uint64_t total = pair_count(static_cast<std::uint64_t>(n));
  if (p == 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) edges.push_back(pair_from_index(n, i));
  } else if (p > 0.0) {
    // Geometric skipping over the lexicographic pair order.
    std::geometric_distribution<std::uint64_t> skip(p);
    for (std::uint64_t i = skip(rng); i < total; i += 1 + skip(rng))
      edges.push_back(pair_from_index(n, i));
  }
  return Graph(n, std::move(edges));
}

RootedBall ball(const Graph& g, Vertex v, int depth) {
  if (v < 0 || v >= g.n()) throw ParameterError("ball: vertex " + std::to_string(v) + " out of range");
  if (depth < 0) throw ParameterError("ball: negative depth");
  RootedBall b;
  b.root = v;
  b.depth = depth;
  std::vector<int> dist(g.n(), -1);
  dist[v] = 0;
  b.vertices.push_back(v);
  b.distances.push_back(0);
  for (std::size_t head = 0; head < b.vertices.size(); ++head) {
    Vertex u = b.vertices[head];
    if (dist[u] == depth) continue;
    for (Vertex w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        b.vertices.push_back(w);
        b.distances.push_back(dist[w]);
      }
  }
  for (Vertex u : b.vertices)
    for (Vertex w : g.neighbors(u))
      if (u < w && dist[w] >= 0) b.edges.emplace_back(u, w);
  std::sort(b.edges.begin(), b.edges.end());
  return b;
}

CycleCensus cycle_census(const Graph& g, int depth) {
  CycleCensus census;
  for (Vertex v = 0; v < g.n(); ++v) {
    RootedBall b = ball(g, v, depth);
    if (b.has_cycle()) ++census.cyclic_ball_vertices;
    census.max_ball_size = std::max(census.max_ball_size, static_cast<int>(b.size()));
  }
  return census;
}

bool pairwise_ball_disjoint(const Graph& g, std::span<const Vertex> roots, int depth) {
  std::vector<Vertex> sorted(roots.begin(), roots.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParameterError("pairwise_ball_disjoint: duplicate roots");
  std::vector<char> seen(g.n(), 0);
  for (Vertex r : roots)
    for (Vertex u : ball(g, r, depth).vertices) {
      if (seen[u]) return false;
      seen[u] = 1;
    }
  return true;
}

void to_json(nlohmann::json& j, const Graph& g) {
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j = nlohmann::json{{"n", g.n()}, {"edges", std::move(edges)}};
}

void from_json(const nlohmann::json& j, Graph& g) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  g = Graph(j.at("n").get<int>(), std::move(edges));
}

std::string graph_to_json_string(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

namespace graphs {

Graph empty(int n) { return Graph(n); }

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph cycle(int n) {
  if (n < 3) throw ParameterError("cycle: needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph(10, std::move(e));
}

Graph from_parents(std::span<const int> parent) {
  std::vector<Edge> e;
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] >= 0) e.emplace_back(parent[v], static_cast<int>(v));
  return Graph(static_cast<int>(parent.size()), std::move(e));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  for (const auto& [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
  return Graph(a.n() + b.n(), std::move(e));
}

}  // namespace graphs
}  // namespace replab
