#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "replab/rng.hpp"

namespace replab {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on 0..n-1. Edges are stored normalized (u < v),
// sorted and deduplicated; every vertex also keeps a sorted neighbor list.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, std::vector<Edge> edges = {});

  int n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;

  // Connected component label per vertex, labels 0.. in order of first vertex.
  std::vector<int> components() const;
  bool is_forest() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// Induced subgraph on all vertices within BFS distance `depth` of `root`.
struct RootedBall {
  Vertex root = 0;
  int depth = 0;
  std::vector<Vertex> vertices;   // BFS order, root first
  std::vector<int> distances;     // parallel to `vertices`
  std::vector<Edge> edges;        // induced, in global vertex ids, u < v

  std::size_t size() const { return vertices.size(); }
  bool has_cycle() const { return edges.size() >= vertices.size(); }
  // Position of global vertex `v` inside `vertices`, or -1.
  int local_index(Vertex v) const;
};

std::uint64_t pair_count(std::uint64_t n);  // C(n,2)
// Lexicographic index of {u,v}, u < v, among all pairs of [n], and its inverse.
std::uint64_t pair_index(std::uint64_t n, Vertex u, Vertex v);
Edge pair_from_index(std::uint64_t n, std::uint64_t index);

// Draws pair indices of [n] without replacement in uniformly random order
// (sparse Fisher-Yates; memory proportional to draws, not to C(n,2)).
class PairShuffler {
 public:
  explicit PairShuffler(int n);
  bool exhausted() const { return taken_ == total_; }
  Edge next(Rng& rng);

 private:
  int n_;
  std::uint64_t total_;
  std::uint64_t taken_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> swaps_;
};

Graph sample_gnm(int n, std::uint64_t m, Rng& rng);
Graph sample_gnp(int n, double p, Rng& rng);

RootedBall ball(const Graph& g, Vertex v, int depth);

struct CycleCensus {
  int cyclic_ball_vertices = 0;  // |{v : ball(v, depth) contains a cycle}|
  int max_ball_size = 0;
};
CycleCensus cycle_census(const Graph& g, int depth);

bool pairwise_ball_disjoint(const Graph& g, std::span<const Vertex> roots, int depth);

void to_json(nlohmann::json& j, const Graph& g);
void from_json(const nlohmann::json& j, Graph& g);
std::string graph_to_json_string(const Graph& g);

// Named small graphs used by tests and experiments.
namespace graphs {
Graph empty(int n);
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph star(int leaves);
Graph petersen();
Graph from_parents(std::span<const int> parent);  // parent[root] = -1
Graph disjoint_union(const Graph& a, const Graph& b);
}  // namespace graphs

}  // namespace replab
