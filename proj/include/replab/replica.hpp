#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/rng.hpp"
#include "replab/tree.hpp"

namespace replab {

// A graph with two proper colorings sharing the same k.
struct DicoloredGraph {
  Graph graph;
  Coloring sigma1, sigma2;

  DicoloredGraph(Graph g, Coloring s1, Coloring s2);
  int k() const { return sigma1.k; }
  int n() const { return graph.n(); }
};

void to_json(nlohmann::json& j, const DicoloredGraph& dg);
DicoloredGraph dicolored_from_json(const nlohmann::json& j);

struct PlantedOptions {
  std::uint64_t max_rejections = 1'000'000;
};

// (sigma1, sigma2) uniform subject to F(sigma1, sigma2) <= C(n,2) - m, by rejection;
// then m uniform edges among the pairs bichromatic under both.
DicoloredGraph sample_planted_replica(int n, std::uint64_t m, int k, Rng& rng, const PlantedOptions& options = {});

// Exact probability of dg under the planted model. N_valid is summed over k x k
// intersection tables rather than over all k^{2n} pairs; a table count above
// `budget` raises CapacityError.
Rational planted_density(const DicoloredGraph& dg, int n, std::uint64_t m, int k,
                         std::uint64_t budget = default_budget());
// Same for a raw triple; 0 when a coloring is improper or sizes disagree.
Rational planted_density(const Graph& g, const Coloring& sigma1, const Coloring& sigma2, int n, std::uint64_t m,
                         int k, std::uint64_t budget = default_budget());
// Number of map pairs (tau1, tau2) in [k]^n x [k]^n with F(tau1, tau2) <= C(n,2) - m.
BigInt planted_valid_pairs(int n, std::uint64_t m, int k, std::uint64_t budget = default_budget());

// Binomial variant: unconditioned uniform maps, each doubly bichromatic pair an edge with probability p.
DicoloredGraph sample_binomial_planted(int n, double p, int k, Rng& rng);

// m / (C(n,2) (1 - 1/k)^2); may exceed 1 at small n. Infinite when C(n,2) = 0 < m.
double lemma42_p(int n, std::uint64_t m, int k);

struct RandomReplicaOptions {
  std::uint64_t max_retries = 10'000;
  SamplerOptions sampler;
};

struct ColorableGraph {
  Graph graph;
  UniformColoringSampler sampler;
};
// G(n,m) conditioned on k-colorability by rejection, with its exact sampler.
ColorableGraph sample_colorable_gnm(int n, std::uint64_t m, int k, Rng& rng, const RandomReplicaOptions& options = {});

// G(n,m) conditioned on k-colorability (rejection), then two independent
// exact-uniform colorings of it.
DicoloredGraph sample_random_replica(int n, std::uint64_t m, int k, Rng& rng, const RandomReplicaOptions& options = {});

enum class Mark { unborn, alive, dead, rejected };

struct MarkTransition {
  Vertex vertex;
  Mark from, to;
};

struct ExplorationOptions {
  double size_threshold = -1.0;  // ball size bound; negative means n^0.1
  bool complete_graph = false;    // also reveal the whole binomial planted graph
  bool trace = false;
};

struct ExplorationResult {
  Vertex root = 0;
  RootedColoredTree tree;              // dicolored, vertices in birth order
  std::vector<Vertex> tree_vertices;   // global vertex of each tree vertex
  bool acyclic = true;                 // no unexplored pair closes a cycle in the ball
  bool small = true;                   // tree size within the threshold
  bool no_rejected_hit = true;         // no candidate edge to a rejected vertex
  bool coupling_ok = true;             // all three
  std::optional<DicoloredGraph> completed;
  std::vector<MarkTransition> marks_trace;
};

// Deferred-decision exploration of the depth-omega ball of a uniformly random
// vertex in the binomial planted replica model.
ExplorationResult explore_coupling(int n, double p, int k, int omega, Rng& rng, const ExplorationOptions& options = {});

}  // namespace replab
