#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include "replab/graph.hpp"
#include "replab/rng.hpp"

namespace replab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(const BigInt& n, std::uint64_t r);  // 0 when r > n or n < 0
std::string to_string(const Rational& q);          // "p/q", or "p" when integral
double to_double(const Rational& q);

// Enumeration budget in search states. Default 10^8, overridden by REPLAB_BUDGET.
std::uint64_t default_budget();

// A map [n] -> [k] with 1-based colors. Properness is a predicate, not an
// invariant: the planted models start from arbitrary maps.
struct Coloring {
  int k = 0;
  std::vector<int> colors;

  Coloring() = default;
  Coloring(int k_, std::vector<int> colors_);
  static Coloring constant(int n, int k, int color = 1);

  int n() const { return static_cast<int>(colors.size()); }
  int operator[](Vertex v) const { return colors[v]; }
  // Number of vertices per color, index 0 holds color 1.
  std::vector<int> class_sizes() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring&, const Coloring&) = default;
};

void to_json(nlohmann::json& j, const Coloring& c);  // JSON array of 1-based colors

// Integer class sizes summing to n; alpha_i = counts[i] / n.
struct ColorProfile {
  int n = 0;
  std::vector<int> counts;

  static ColorProfile of(const Coloring& sigma);
  // Throws ParameterError unless every n*alpha_i is a non-negative integer and sum(alpha) = 1.
  static ColorProfile from_fractions(std::span<const Rational> alpha, int n);
  std::vector<double> fractions() const;
  friend bool operator==(const ColorProfile&, const ColorProfile&) = default;
};

// k x k class-intersection counts of two colorings; rho_ij = count(i,j) / n.
struct OverlapMatrix {
  int k = 0;
  int n = 0;
  std::vector<int> counts;  // row-major, (i-1)*k + (j-1)

  int count(int i, int j) const { return counts[(i - 1) * k + (j - 1)]; }
  double value(int i, int j) const { return static_cast<double>(count(i, j)) / n; }
  Rational exact(int i, int j) const { return Rational(count(i, j), n); }
  std::vector<double> flattened() const;  // row-major rho as reals
  friend bool operator==(const OverlapMatrix&, const OverlapMatrix&) = default;
  friend auto operator<=>(const OverlapMatrix&, const OverlapMatrix&) = default;
};

OverlapMatrix overlap(const Coloring& sigma, const Coloring& tau);

bool is_proper(const Graph& g, const Coloring& sigma);

// F(sigma): complete-graph edges monochromatic under sigma.
std::uint64_t forbidden_count(const Coloring& sigma);
// F(sigma, tau) through the class-intersection identity.
std::uint64_t forbidden_count_pair(const Coloring& sigma, const Coloring& tau);
// Same quantity by scanning all C(n,2) pairs.
std::uint64_t forbidden_count_pair_scan(const Coloring& sigma, const Coloring& tau);

// Proper k-colorings of g in lexicographic order, by pruned backtracking over
// vertices 0..n-1. Each tentative color assignment counts as one state; the
// enumerator throws CapacityError once `budget` states have been visited.
class ColoringEnumerator {
 public:
  ColoringEnumerator(const Graph& g, int k, std::uint64_t budget = default_budget());

  // Advances to the next proper coloring; false when exhausted.
  bool next();
  const Coloring& current() const { return current_; }
  std::uint64_t states_visited() const { return states_; }

 private:
  Graph g_;
  int k_;
  std::uint64_t budget_;
  std::uint64_t states_ = 0;
  Coloring current_;
  int pos_ = 0;
  bool started_ = false;
  bool done_ = false;

  bool admissible(Vertex v, int color) const;
  bool advance_from(int pos);
};

std::vector<Coloring> enumerate_colorings(const Graph& g, int k, std::uint64_t budget = default_budget());

// Exact Z_k(g): closed form on forests, brute force otherwise.
BigInt count_colorings(const Graph& g, int k, std::uint64_t budget = default_budget());
BigInt count_colorings_bruteforce(const Graph& g, int k, std::uint64_t budget = default_budget());
BigInt count_colorings_forest(const Graph& g, int k);  // throws ParameterError if g has a cycle

BigInt count_by_profile(const Graph& g, int k, const ColorProfile& alpha,
                        std::uint64_t budget = default_budget());
// Number of pairs of proper colorings whose overlap equals rho.
BigInt count_pairs_by_overlap(const Graph& g, int k, const OverlapMatrix& rho,
                              std::uint64_t budget = default_budget());
// Every realized overlap with its pair count; the counts sum to Z_k(g)^2.
std::map<OverlapMatrix, BigInt> overlap_census(const Graph& g, int k, std::uint64_t budget = default_budget());

// P[sigma proper in G(n,m)] = C(C(n,2)-F, m) / C(C(n,2), m).
Rational prob_proper_exact(const Coloring& sigma, int n, std::uint64_t m);

enum class SamplerMethod { forest, enumeration, elimination };

struct SamplerOptions {
  std::uint64_t budget = default_budget();
  int enumeration_max_n = 16;            // larger graphs go straight to elimination
  std::size_t max_listed = 2'000'000;    // colorings kept in memory by the list sampler
  std::size_t max_table = std::size_t{1} << 24;  // entries per elimination table
};

// Exact uniform sampler over the proper k-colorings of a fixed graph.
//  - forest: root of each component uniform, every child uniform among the k-1
//    colors avoiding its parent;
//  - enumeration: uniform index into the full list;
//  - elimination: bucket elimination along a min-degree order, then backward
//    sampling (forward filtering / backward sampling on the constraint graph).
// Construction throws DomainError if g has no proper k-coloring.
class UniformColoringSampler {
 public:
  UniformColoringSampler(const Graph& g, int k, const SamplerOptions& options = {});
  ~UniformColoringSampler();
  UniformColoringSampler(UniformColoringSampler&&) noexcept;
  UniformColoringSampler& operator=(UniformColoringSampler&&) noexcept;

  Coloring sample(Rng& rng) const;
  SamplerMethod method() const { return method_; }
  // All proper colorings, available when method() == enumeration.
  const std::vector<Coloring>& listed() const { return listed_; }
  // Natural log of Z_k(g) (exact for forests and lists, floating point otherwise).
  double log_count() const { return log_count_; }

 private:
  struct Elimination;
  std::shared_ptr<const Graph> g_;
  int k_;
  SamplerMethod method_;
  std::vector<Coloring> listed_;
  std::unique_ptr<Elimination> elimination_;
  double log_count_ = 0.0;
};

Coloring sample_uniform_coloring(const Graph& g, int k, Rng& rng, const SamplerOptions& options = {});
// Uniform random map [n] -> [k], no graph involved.
Coloring sample_uniform_map(int n, int k, Rng& rng);
bool is_colorable(const Graph& g, int k, std::uint64_t budget = default_budget());

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  bool exact = false;
};

using GibbsStatistic = std::function<double(std::span<const Coloring>)>;

// <X(S_1..S_l)>_{g,k}: exact average over S_k(g)^l.
double gibbs_average_exact(const Graph& g, int k, int l, const GibbsStatistic& statistic,
                           std::uint64_t budget = default_budget());
// Monte Carlo with `samples` independent l-tuples of exact-uniform colorings.
Estimate gibbs_average_mc(const Graph& g, int k, int l, const GibbsStatistic& statistic,
                          std::uint64_t samples, Rng& rng);

}  // namespace replab
