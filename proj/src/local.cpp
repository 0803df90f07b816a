#include "replab/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "replab/errors.hpp"
#include "replab/parallel.hpp"
#include "replab/stats.hpp"

namespace replab {

namespace {

int effective_depth(const Graph& g, int omega) { return omega < 0 ? std::max(g.n(), 1) : omega; }

LocalCode shape_code(const RootedColoredTree& theta, const Coloring* tau) {
  RootedColoredTree t = theta;
  t.clear_colorings();
  if (tau) t.set_coloring(1, *tau);
  return canonical_code(t);
}

// Balls around every vertex whose uncolored shape is theta's.
std::vector<RootedBall> matching_balls(const Graph& g, const RootedColoredTree& theta, int omega) {
  const LocalCode bare = shape_code(theta, nullptr);
  std::vector<RootedBall> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    RootedBall b = ball(g, v, omega);
    if (static_cast<int>(b.size()) != theta.size() || b.has_cycle()) continue;
    if (canonical_code(b) == bare) out.push_back(std::move(b));
  }
  return out;
}

double vertex_bias(std::span<const double> mu, int k) {
  double s = 0.0;
  for (double x : mu) s += std::abs(x - 1.0 / k);
  return 0.5 * s;
}

void check_k(int k, const char* who) {
  if (k < 1) throw ParameterError(std::string(who) + ": k must be positive");
}

void check_root(const Graph& g, Vertex v, const char* who) {
  if (v < 0 || v >= g.n()) throw ParameterError(std::string(who) + ": vertex out of range");
}

// BFS distances from v; unreachable vertices get a large sentinel.
std::vector<int> distances_from(const Graph& g, Vertex v) {
  std::vector<int> dist(g.n(), std::numeric_limits<int>::max());
  std::vector<Vertex> queue{v};
  dist[v] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Vertex w : g.neighbors(queue[i]))
      if (dist[w] == std::numeric_limits<int>::max()) {
        dist[w] = dist[queue[i]] + 1;
        queue.push_back(w);
      }
  return dist;
}

}  // namespace

double q_statistic(const DicoloredGraph& dg, const RootedColoredTree& theta, const Coloring& tau1,
                   const Coloring& tau2, int omega) {
  const LocalCode c1 = shape_code(theta, &tau1), c2 = shape_code(theta, &tau2);
  std::uint64_t hits = 0;
  for (const auto& b : matching_balls(dg.graph, theta, omega))
    if (canonical_code(b, &dg.sigma1) == c1 && canonical_code(b, &dg.sigma2) == c2) ++hits;
  return dg.n() == 0 ? 0.0 : static_cast<double>(hits) / dg.n();
}

std::map<std::pair<std::string, std::string>, double> q_class_frequencies(const DicoloredGraph& dg, int omega) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (Vertex v = 0; v < dg.n(); ++v) {
    RootedBall b = ball(dg.graph, v, omega);
    ++counts[{canonical_code(b, &dg.sigma1).bytes, canonical_code(b, &dg.sigma2).bytes}];
  }
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& [key, c] : counts) out[key] = static_cast<double>(c) / dg.n();
  return out;
}

Rational colored_orbit_fraction(const RootedColoredTree& theta, const Coloring& tau, int k) {
  check_k(k, "colored_orbit_fraction");
  if (tau.n() != theta.size()) throw ParameterError("colored_orbit_fraction: tau does not match theta");
  const auto dist = tree_ball_distribution(theta, theta.height(), k);
  auto it = dist.find(shape_code(theta, &tau).bytes);
  return it == dist.end() ? Rational(0) : it->second;
}

LocalDistribution LocalDistribution::marginal(int index) const {
  if (index < 0 || index >= arity) throw ParameterError("LocalDistribution::marginal: index out of range");
  LocalDistribution out;
  out.arity = 1;
  out.exact = exact;
  out.samples = samples;
  for (const auto& [tuple, p] : support) out.support[{tuple[index]}] += p;
  return out;
}

Rational LocalDistribution::total() const {
  Rational s = 0;
  for (const auto& [tuple, p] : support) s += p;
  return s;
}

void to_json(nlohmann::json& j, const LocalDistribution& d) {
  nlohmann::json support = nlohmann::json::object();
  for (const auto& [tuple, p] : d.support) {
    std::string key;
    for (std::size_t i = 0; i < tuple.size(); ++i) key += (i ? "." : "") + tuple[i].hex();
    support[key] = to_string(p);
  }
  j = {{"arity", d.arity}, {"exact", d.exact}, {"samples", d.samples}, {"support", support}};
}

LocalDistribution empirical_local_distribution(const Graph& g, std::span<const Vertex> roots, int omega, int k,
                                               LocalMode mode, std::uint64_t samples, Rng* rng,
                                               std::uint64_t budget) {
  check_k(k, "empirical_local_distribution");
  if (roots.empty()) throw ParameterError("empirical_local_distribution: need at least one root");
  for (Vertex v : roots) check_root(g, v, "empirical_local_distribution");
  const int depth = effective_depth(g, omega);
  std::vector<RootedBall> balls;
  std::vector<Vertex> covered;
  for (Vertex v : roots) {
    balls.push_back(ball(g, v, depth));
    covered.insert(covered.end(), balls.back().vertices.begin(), balls.back().vertices.end());
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());

  // Tally colorings by their restriction to the covered vertices, then code each restriction once.
  std::map<std::vector<int>, std::uint64_t> restrictions;
  std::uint64_t total = 0;
  auto tally = [&](const Coloring& sigma) {
    std::vector<int> r(covered.size());
    for (std::size_t i = 0; i < covered.size(); ++i) r[i] = sigma[covered[i]];
    ++restrictions[std::move(r)];
    ++total;
  };
  LocalDistribution out;
  out.arity = static_cast<int>(roots.size());
  if (mode == LocalMode::exact) {
    ColoringEnumerator it(g, k, budget);
    while (it.next()) tally(it.current());
    if (total == 0) throw DomainError("empirical_local_distribution: graph is not k-colorable");
  } else {
    if (!rng || samples == 0) throw ParameterError("empirical_local_distribution: MC mode needs samples and an rng");
    out.exact = false;
    out.samples = samples;
    UniformColoringSampler sampler(g, k);
    for (std::uint64_t s = 0; s < samples; ++s) tally(sampler.sample(*rng));
  }
  Coloring full = Coloring::constant(g.n(), k);
  for (const auto& [r, count] : restrictions) {
    for (std::size_t i = 0; i < covered.size(); ++i) full.colors[covered[i]] = r[i];
    std::vector<LocalCode> tuple;
    for (const auto& b : balls) tuple.push_back(canonical_code(b, &full));
    out.support[std::move(tuple)] += Rational(count, total);
  }
  return out;
}

TvResult tv_local_vs_uniform(const Graph& g, std::span<const Vertex> roots, int omega, int k,
                             std::uint64_t budget) {
  check_k(k, "tv_local_vs_uniform");
  if (roots.empty()) throw ParameterError("tv_local_vs_uniform: need at least one root");
  for (Vertex v : roots) check_root(g, v, "tv_local_vs_uniform");
  const int depth = effective_depth(g, omega);
  TvResult out;
  {
    std::vector<Vertex> sorted(roots.begin(), roots.end());
    std::sort(sorted.begin(), sorted.end());
    const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    out.balls_disjoint = !repeated && pairwise_ball_disjoint(g, roots, depth);
  }

  // Union of the balls as a standalone graph: union of the induced edge sets.
  std::vector<Vertex> covered;
  std::vector<Edge> edges;
  for (Vertex v : roots) {
    RootedBall b = ball(g, v, depth);
    covered.insert(covered.end(), b.vertices.begin(), b.vertices.end());
    edges.insert(edges.end(), b.edges.begin(), b.edges.end());
  }
  std::sort(covered.begin(), covered.end());
  covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<int> local(g.n(), -1);
  for (std::size_t i = 0; i < covered.size(); ++i) local[covered[i]] = static_cast<int>(i);
  std::vector<Edge> local_edges;
  for (auto [u, w] : edges) local_edges.emplace_back(local[u], local[w]);
  Graph u(static_cast<int>(covered.size()), std::move(local_edges));
  out.union_forest = u.is_forest();

  std::map<std::vector<int>, std::uint64_t> restrictions;
  std::uint64_t zg = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) {
    std::vector<int> r(covered.size());
    for (std::size_t i = 0; i < covered.size(); ++i) r[i] = it.current()[covered[i]];
    ++restrictions[std::move(r)];
    ++zg;
  }
  if (zg == 0) throw DomainError("tv_local_vs_uniform: graph is not k-colorable");
  const BigInt zu = count_colorings(u, k, budget);
  // Every restriction of a proper coloring of g is proper on u, so the unrealized
  // colorings of u each contribute 1/Z_u.
  Rational s = Rational(zu - BigInt(restrictions.size()), zu);
  for (const auto& [r, c] : restrictions) s += abs(Rational(c, zg) - Rational(1, zu));
  out.tv = s / 2;
  out.value = to_double(out.tv);
  return out;
}

double replica_local_covariance(const Graph& g, const RootedColoredTree& theta, const Coloring& tau, int omega,
                                int k, std::uint64_t budget) {
  check_k(k, "replica_local_covariance");
  if (g.n() == 0) return 0.0;
  const auto balls = matching_balls(g, theta, omega);
  if (balls.empty()) return 0.0;
  const LocalCode target = shape_code(theta, &tau);
  const Rational p = colored_orbit_fraction(theta, tau, k);
  std::vector<std::uint64_t> hits(balls.size(), 0);
  std::uint64_t z = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) {
    ++z;
    for (std::size_t i = 0; i < balls.size(); ++i)
      if (canonical_code(balls[i], &it.current()) == target) ++hits[i];
  }
  if (z == 0) throw DomainError("replica_local_covariance: graph is not k-colorable");
  Rational s = 0;
  for (auto h : hits) {
    Rational b = Rational(h, z) - p;
    s += b * b;
  }
  return to_double(s / g.n());
}

double replica_local_covariance_pairwise(const Graph& g, const RootedColoredTree& theta, const Coloring& tau,
                                         int omega, int k, std::uint64_t budget) {
  check_k(k, "replica_local_covariance_pairwise");
  if (g.n() == 0) return 0.0;
  const auto balls = matching_balls(g, theta, omega);
  if (balls.empty()) return 0.0;
  const LocalCode target = shape_code(theta, &tau);
  const double p = to_double(colored_orbit_fraction(theta, tau, k));
  // t[s][i]: indicator for coloring s at ball i.
  std::vector<std::vector<char>> t;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) {
    std::vector<char> row(balls.size());
    for (std::size_t i = 0; i < balls.size(); ++i) row[i] = canonical_code(balls[i], &it.current()) == target;
    t.push_back(std::move(row));
  }
  if (t.empty()) throw DomainError("replica_local_covariance_pairwise: graph is not k-colorable");
  const double z = static_cast<double>(t.size());
  double s = 0.0;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    double acc = 0.0;
    for (const auto& a : t)
      for (const auto& b : t) acc += (a[i] - p) * (b[i] - p);
    s += acc / (z * z);
  }
  return s / g.n();
}

namespace {

struct ShapeMatcher {
  std::vector<LocalCode> bare, colored;
  std::vector<std::vector<RootedBall>> balls;  // candidate balls per shape
};

ShapeMatcher make_matcher(const Graph& g, std::span<const ColoredShape> shapes, int omega) {
  ShapeMatcher m;
  for (const auto& s : shapes) {
    if (s.tau.n() != s.theta.size()) throw ParameterError("product_statistic: tau does not match theta");
    m.colored.push_back(shape_code(s.theta, &s.tau));
    m.balls.push_back(matching_balls(g, s.theta, omega));
  }
  return m;
}

// prod_i (1/n) #{v : (ball(v), sigma) ~ (theta_i, tau_i)}.
double product_given(const ShapeMatcher& m, const Coloring& sigma, int n) {
  double prod = 1.0;
  for (std::size_t i = 0; i < m.balls.size(); ++i) {
    std::uint64_t hits = 0;
    for (const auto& b : m.balls[i])
      if (canonical_code(b, &sigma) == m.colored[i]) ++hits;
    prod *= static_cast<double>(hits) / n;
    if (prod == 0.0) break;
  }
  return prod;
}

}  // namespace

Estimate product_statistic(const Graph& g, std::span<const ColoredShape> shapes, int omega, int k,
                           std::uint64_t samples, Rng& rng) {
  check_k(k, "product_statistic");
  if (shapes.empty() || samples == 0) throw ParameterError("product_statistic: need shapes and samples");
  if (g.n() == 0) throw ParameterError("product_statistic: empty graph");
  UniformColoringSampler sampler(g, k);
  return product_statistic(g, shapes, omega, sampler, samples, rng);
}

Estimate product_statistic(const Graph& g, std::span<const ColoredShape> shapes, int omega,
                           const UniformColoringSampler& sampler, std::uint64_t samples, Rng& rng) {
  if (shapes.empty() || samples == 0) throw ParameterError("product_statistic: need shapes and samples");
  if (g.n() == 0) throw ParameterError("product_statistic: empty graph");
  const auto m = make_matcher(g, shapes, omega);
  RunningStats st;
  for (std::uint64_t s = 0; s < samples; ++s) st.add(product_given(m, sampler.sample(rng), g.n()));
  return {st.mean(), st.std_error(), samples, false};
}

double product_statistic_exact(const Graph& g, std::span<const ColoredShape> shapes, int omega, int k,
                               std::uint64_t budget) {
  check_k(k, "product_statistic_exact");
  if (shapes.empty()) throw ParameterError("product_statistic_exact: need shapes");
  if (g.n() == 0) throw ParameterError("product_statistic_exact: empty graph");
  const auto m = make_matcher(g, shapes, omega);
  ColoringEnumerator it(g, k, budget);
  double s = 0.0;
  std::uint64_t z = 0;
  while (it.next()) {
    s += product_given(m, it.current(), g.n());
    ++z;
  }
  if (z == 0) throw DomainError("product_statistic_exact: graph is not k-colorable");
  return s / static_cast<double>(z);
}

double reconstruction_corr_graph(const Graph& g, Vertex v, int omega, int k, std::uint64_t budget) {
  check_k(k, "reconstruction_corr_graph");
  check_root(g, v, "reconstruction_corr_graph");
  if (omega < 0) throw ParameterError("reconstruction_corr_graph: omega must be non-negative");
  const auto dist = distances_from(g, v);
  std::vector<Vertex> outside;
  for (Vertex w = 0; w < g.n(); ++w)
    if (dist[w] >= omega) outside.push_back(w);
  // Colorings grouped by sigma0 outside the inner ball; per group, counts of sigma(v).
  std::map<std::vector<int>, std::vector<std::uint64_t>> groups;
  std::uint64_t z = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) {
    const Coloring& s = it.current();
    std::vector<int> key(outside.size());
    for (std::size_t i = 0; i < outside.size(); ++i) key[i] = s[outside[i]];
    auto& counts = groups[std::move(key)];
    if (counts.empty()) counts.assign(k, 0);
    ++counts[s[v] - 1];
    ++z;
  }
  if (z == 0) throw DomainError("reconstruction_corr_graph: graph is not k-colorable");
  // Each sigma0 in a group sees the same conditional law, so the group weighs by its size.
  double corr = 0.0;
  std::vector<double> mu(k);
  for (const auto& [key, counts] : groups) {
    const double size = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    for (int c = 0; c < k; ++c) mu[c] = counts[c] / size;
    corr += size * vertex_bias(mu, k);
  }
  return corr / static_cast<double>(z);
}

namespace {

// Law of sigma(v) among proper colorings agreeing with sigma0 off `inner`.
std::vector<double> conditional_marginal(const Graph& g, Vertex v, const std::vector<Vertex>& inner,
                                         const Coloring& sigma0, int k) {
  Coloring s = sigma0;
  std::vector<char> free(g.n(), 0);
  for (Vertex u : inner) free[u] = 1;
  std::vector<double> counts(k, 0.0);
  std::vector<Vertex> order = inner;
  std::sort(order.begin(), order.end());
  // Positions in `order` are assigned left to right; free neighbors later in the
  // order are unassigned, so only earlier free / fixed neighbors are checked.
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  auto admissible = [&](Vertex u, int c) {
    for (Vertex w : g.neighbors(u)) {
      if (free[w] && pos[w] > pos[u]) continue;
      if (s[w] == c) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == order.size()) {
      counts[s[v] - 1] += 1.0;
      return;
    }
    Vertex u = order[i];
    for (int c = 1; c <= k; ++c)
      if (admissible(u, c)) {
        s.colors[u] = c;
        self(self, i + 1);
      }
  };
  rec(rec, 0);
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  for (auto& x : counts) x /= total;
  return counts;
}

}  // namespace

Estimate reconstruction_corr_graph_mc(const Graph& g, Vertex v, int omega, int k, std::uint64_t samples, Rng& rng) {
  check_k(k, "reconstruction_corr_graph_mc");
  check_root(g, v, "reconstruction_corr_graph_mc");
  if (omega < 0 || samples == 0) throw ParameterError("reconstruction_corr_graph_mc: need omega >= 0 and samples");
  const auto dist = distances_from(g, v);
  std::vector<Vertex> inner;
  for (Vertex w = 0; w < g.n(); ++w)
    if (dist[w] < omega) inner.push_back(w);
  UniformColoringSampler sampler(g, k);
  RunningStats st;
  for (std::uint64_t s = 0; s < samples; ++s) {
    auto mu = conditional_marginal(g, v, inner, sampler.sample(rng), k);
    st.add(vertex_bias(mu, k));
  }
  return {st.mean(), st.std_error(), samples, false};
}

namespace {

// Upward counting messages on the depth-omega truncation: msg[u][c] is the
// (normalized) number of colorings of u's subtree with u colored c that agree
// with the fixed colors at depth omega.
std::vector<double> root_posterior(const RootedColoredTree& t, int omega, int k, const std::vector<int>& boundary) {
  const int n = t.size();
  auto kids = t.children();
  std::vector<std::vector<double>> msg(n);
  for (int u = n - 1; u >= 0; --u) {
    if (t.depth(u) > omega) continue;
    auto& m = msg[u];
    if (t.depth(u) == omega) {
      m.assign(k, 0.0);
      m[boundary[u] - 1] = 1.0;
      continue;
    }
    m.assign(k, 1.0);
    for (int w : kids[u]) {
      const auto& mw = msg[w];
      const double sum = std::accumulate(mw.begin(), mw.end(), 0.0);
      for (int c = 0; c < k; ++c) m[c] *= sum - mw[c];
    }
    const double z = std::accumulate(m.begin(), m.end(), 0.0);
    if (z > 0)
      for (auto& x : m) x /= z;
    for (int w : kids[u]) std::vector<double>().swap(msg[w]);
  }
  return msg[0];
}

}  // namespace

double root_bias_given_boundary(const RootedColoredTree& t, int omega, int k) {
  check_k(k, "root_bias_given_boundary");
  if (omega < 0) throw ParameterError("root_bias_given_boundary: omega must be non-negative");
  if (!t.coloring(1)) throw ParameterError("root_bias_given_boundary: tree carries no coloring");
  return vertex_bias(root_posterior(t, omega, k, t.coloring(1)->colors), k);
}

double reconstruction_corr_fixed_tree(const RootedColoredTree& t, int omega, int k) {
  check_k(k, "reconstruction_corr_fixed_tree");
  if (omega < 0) throw ParameterError("reconstruction_corr_fixed_tree: omega must be non-negative");
  if (t.size() > 1 && k < 2) throw DomainError("reconstruction_corr_fixed_tree: tree is not 1-colorable");
  if (omega > t.height()) return 0.0;  // nothing at depth omega: the root is unconditioned
  std::vector<int> level;
  for (int v = 0; v < t.size(); ++v)
    if (t.depth(v) == omega) level.push_back(v);
  if (static_cast<double>(level.size()) * std::log(static_cast<double>(k)) > std::log(static_cast<double>(default_budget())))
    throw CapacityError("reconstruction_corr_fixed_tree: too many boundary colorings to enumerate");
  // Every boundary assignment, weighted by the number of colorings of the
  // truncation extending it (unnormalized root messages).
  const int n = t.size();
  auto kids = t.children();
  std::vector<int> boundary(n, 1);
  double weighted = 0.0, total = 0.0;
  std::vector<int> digits(level.size(), 1);
  for (;;) {
    for (std::size_t i = 0; i < level.size(); ++i) boundary[level[i]] = digits[i];
    std::vector<std::vector<double>> cnt(n);
    for (int u = n - 1; u >= 0; --u) {
      if (t.depth(u) > omega) continue;
      if (t.depth(u) == omega) {
        cnt[u].assign(k, 0.0);
        cnt[u][boundary[u] - 1] = 1.0;
        continue;
      }
      cnt[u].assign(k, 1.0);
      for (int w : kids[u]) {
        const double sum = std::accumulate(cnt[w].begin(), cnt[w].end(), 0.0);
        for (int c = 0; c < k; ++c) cnt[u][c] *= sum - cnt[w][c];
      }
    }
    const double w = std::accumulate(cnt[0].begin(), cnt[0].end(), 0.0);
    if (w > 0) {
      for (auto& x : cnt[0]) x /= w;
      weighted += w * vertex_bias(cnt[0], k);
      total += w;
    }
    std::size_t i = 0;
    while (i < digits.size() && digits[i] == k) digits[i++] = 1;
    if (i == digits.size()) break;
    ++digits[i];
  }
  return weighted / total;
}

std::vector<Estimate> reconstruction_corr_tree_profile(double d, int omega_max, int k, std::uint64_t samples,
                                                       std::uint64_t seed, int workers) {
  check_k(k, "reconstruction_corr_tree");
  if (omega_max < 1 || samples == 0) throw ParameterError("reconstruction_corr_tree: need omega >= 1 and samples");
  if (!(d >= 0)) throw ParameterError("reconstruction_corr_tree: d must be non-negative");
  if (k < 2) throw DomainError("reconstruction_corr_tree: k must be at least 2");
  auto per_tree = parallel_map<std::vector<double>>(samples, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    RootedColoredTree t = broadcast_coloring(sample_gw_tree(d, omega_max, rng), k, rng);
    std::vector<double> out(omega_max);
    for (int w = 1; w <= omega_max; ++w)
      out[w - 1] = w > t.height() ? 0.0 : root_bias_given_boundary(t, w, k);
    return out;
  });
  std::vector<Estimate> out;
  for (int w = 0; w < omega_max; ++w) {
    RunningStats st;
    for (const auto& row : per_tree) st.add(row[w]);
    out.push_back({st.mean(), st.std_error(), samples, false});
  }
  return out;
}

Estimate reconstruction_corr_tree(double d, int omega, int k, std::uint64_t samples, Rng& rng) {
  check_k(k, "reconstruction_corr_tree");
  if (omega < 1 || samples == 0) throw ParameterError("reconstruction_corr_tree: need omega >= 1 and samples");
  if (!(d >= 0)) throw ParameterError("reconstruction_corr_tree: d must be non-negative");
  if (k < 2) throw DomainError("reconstruction_corr_tree: k must be at least 2");
  RunningStats st;
  for (std::uint64_t s = 0; s < samples; ++s) {
    RootedColoredTree t = broadcast_coloring(sample_gw_tree(d, omega, rng), k, rng);
    st.add(omega > t.height() ? 0.0 : root_bias_given_boundary(t, omega, k));
  }
  return {st.mean(), st.std_error(), samples, false};
}

}  // namespace replab
