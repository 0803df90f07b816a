#pragma once

#include <cstdint>
#include <optional>

#include "replab/coloring.hpp"
#include "replab/graph.hpp"
#include "replab/report.hpp"

namespace replab {

// Frobenius distance from rho to the uniform matrix with entries 1/k^2.
double overlap_distance(const OverlapMatrix& rho);
// Distance from alpha(sigma) to the uniform profile.
double profile_distance(const Coloring& sigma);

// 1 - ln^20(k) / k. Negative for every k below roughly e^90.
double kappa_default(int k);

struct StabilityClass {
  int s = 0;               // entries with k rho_ij >= kappa
  bool separable = true;   // no k rho_ij in the open interval (0.51, kappa)
  double kappa = 0.0;
};

// kappa defaults to kappa_default(k); a non-positive value raises DomainError.
StabilityClass classify_stability(const OverlapMatrix& rho, int k, std::optional<double> kappa = {});

// |{tau in S_k(g) : rho(sigma, tau) is k-stable}| by exhaustive scan.
BigInt cluster_size(const Graph& g, const Coloring& sigma, int k, std::optional<double> kappa = {},
                    std::uint64_t budget = default_budget());

struct OverlapExperimentOptions {
  bool exact_pairs = false;      // average over all Z^2 pairs (overlap census) instead of sampled pairs
  std::optional<double> kappa;   // when set, also report the fraction of k-stable pairs
};

// E over colorable G(n,m) of <||rho(S1,S2) - rho_bar||_2>, `pairs` exact-uniform pairs per graph.
ExperimentReport overlap_concentration_experiment(int n, std::uint64_t m, int k, std::uint64_t graphs,
                                                  std::uint64_t pairs, std::uint64_t seed, int workers = 1,
                                                  const OverlapExperimentOptions& options = {});

// For omega = 1..omega_bound, E over colorable G(n,m) of the Gibbs probability that
// ||alpha(S) - alpha_bar||_2 > sqrt(omega / n). With exact_gibbs the inner
// average is taken over all colorings, otherwise over `colorings` samples.
ExperimentReport profile_concentration_experiment(int n, std::uint64_t m, int k, int omega_bound,
                                                  std::uint64_t graphs, std::uint64_t colorings, bool exact_gibbs,
                                                  std::uint64_t seed, int workers = 1);

}  // namespace replab
