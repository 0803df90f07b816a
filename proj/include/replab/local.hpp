#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "replab/canonical.hpp"
#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/replica.hpp"
#include "replab/tree.hpp"

namespace replab {

// (1/n) #{v : (ball(v), sigma1) ~ (theta, tau1) and (ball(v), sigma2) ~ (theta, tau2)}.
double q_statistic(const DicoloredGraph& dg, const RootedColoredTree& theta, const Coloring& tau1,
                   const Coloring& tau2, int omega);
// Fraction of vertices in each class (code of (ball, sigma1), code of (ball, sigma2)).
std::map<std::pair<std::string, std::string>, double> q_class_frequencies(const DicoloredGraph& dg, int omega);

// Probability that a uniform proper coloring of theta is isomorphic to (theta, tau):
// |orbit of tau under Aut(theta)| / Z_k(theta). Equals 1/Z_k(theta) when (theta, tau)
// has no nontrivial automorphism.
Rational colored_orbit_fraction(const RootedColoredTree& theta, const Coloring& tau, int k);

enum class LocalMode { exact, mc };

// Law of the tuple of colored ball codes at the roots under a uniform coloring.
struct LocalDistribution {
  int arity = 0;
  bool exact = true;
  std::uint64_t samples = 0;  // colorings drawn in MC mode
  std::map<std::vector<LocalCode>, Rational> support;

  LocalDistribution marginal(int index) const;
  Rational total() const;
};

// JSON map from '.'-joined hex codes to "p/q" probabilities.
void to_json(nlohmann::json& j, const LocalDistribution& d);

LocalDistribution empirical_local_distribution(const Graph& g, std::span<const Vertex> roots, int omega, int k,
                                               LocalMode mode = LocalMode::exact, std::uint64_t samples = 0,
                                               Rng* rng = nullptr, std::uint64_t budget = default_budget());

struct TvResult {
  Rational tv;
  double value = 0.0;
  bool balls_disjoint = true;
  bool union_forest = true;
  bool flagged() const { return !balls_disjoint || !union_forest; }
};

// TV between the uniform coloring of g projected onto the union of the balls and
// the uniform coloring of that union taken as a graph of its own.
TvResult tv_local_vs_uniform(const Graph& g, std::span<const Vertex> roots, int omega, int k,
                             std::uint64_t budget = default_budget());

// (1/n) sum over v with ball(v) ~ theta of (<t>_v - p)^2, t = 1{(ball, sigma) ~ (theta, tau)},
// p = colored_orbit_fraction(theta, tau, k).
double replica_local_covariance(const Graph& g, const RootedColoredTree& theta, const Coloring& tau, int omega,
                                int k, std::uint64_t budget = default_budget());
// Same quantity from the two-replica form, averaging over all coloring pairs.
double replica_local_covariance_pairwise(const Graph& g, const RootedColoredTree& theta, const Coloring& tau,
                                         int omega, int k, std::uint64_t budget = default_budget());

struct ColoredShape {
  RootedColoredTree theta;
  Coloring tau;
};

// n^{-l} sum over root tuples of <prod_i 1{(ball(v_i), sigma) ~ (theta_i, tau_i)}>.
// Given sigma the tuple sum factorizes, so the estimator averages the exact
// per-coloring product over `samples` uniform colorings.
Estimate product_statistic(const Graph& g, std::span<const ColoredShape> shapes, int omega, int k,
                           std::uint64_t samples, Rng& rng);
Estimate product_statistic(const Graph& g, std::span<const ColoredShape> shapes, int omega,
                           const UniformColoringSampler& sampler, std::uint64_t samples, Rng& rng);
double product_statistic_exact(const Graph& g, std::span<const ColoredShape> shapes, int omega, int k,
                               std::uint64_t budget = default_budget());

// corr_{k,g}(v, omega): average over sigma0 in S_k(g) of the bias of v given sigma0 on
// all vertices at distance >= omega. Exact by enumeration.
double reconstruction_corr_graph(const Graph& g, Vertex v, int omega, int k, std::uint64_t budget = default_budget());
// sigma0 sampled; the conditional marginal is still exact (enumeration of the inner ball).
Estimate reconstruction_corr_graph_mc(const Graph& g, Vertex v, int omega, int k, std::uint64_t samples, Rng& rng);

// Exact corr on a fixed tree at its root: boundary colorings at depth omega weighted
// by their counts, root posterior by counting DP.
double reconstruction_corr_fixed_tree(const RootedColoredTree& t, int omega, int k);
// Bias of the root given the depth-omega colors of a colored tree (slot 1).
double root_bias_given_boundary(const RootedColoredTree& t, int omega, int k);

// E corr over GW(d) trees for omega = 1..omega_max. Trees are grown to omega_max and
// broadcast once, so all depths share random numbers.
std::vector<Estimate> reconstruction_corr_tree_profile(double d, int omega_max, int k, std::uint64_t samples,
                                                       std::uint64_t seed, int workers = 1);
Estimate reconstruction_corr_tree(double d, int omega, int k, std::uint64_t samples, Rng& rng);

}  // namespace replab
