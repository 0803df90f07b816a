#include "replab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "replab/canonical.hpp"
#include "replab/errors.hpp"

namespace replab {

RootedColoredTree::RootedColoredTree() : parent_{-1}, depth_{0} {}

RootedColoredTree::RootedColoredTree(std::vector<int> parent) : parent_(std::move(parent)) {
  if (parent_.empty() || parent_[0] != -1) throw ParameterError("tree: vertex 0 must be the root (parent -1)");
  depth_.assign(parent_.size(), 0);
  for (std::size_t v = 1; v < parent_.size(); ++v) {
    if (parent_[v] < 0 || parent_[v] >= static_cast<int>(v))
      throw ParameterError("tree: parent[v] must lie in [0, v) for v > 0");
    depth_[v] = depth_[parent_[v]] + 1;
  }
}

int RootedColoredTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

std::vector<std::vector<int>> RootedColoredTree::children() const {
  std::vector<std::vector<int>> out(size());
  for (int v = 1; v < size(); ++v) out[parent_[v]].push_back(v);
  return out;
}

Graph RootedColoredTree::graph() const { return graphs::from_parents(parent_); }

void RootedColoredTree::set_coloring(int slot, Coloring c) {
  if (slot != 1 && slot != 2) throw ParameterError("tree: coloring slot must be 1 or 2");
  if (slot == 2 && !colors1_) throw ParameterError("tree: slot 1 must be filled before slot 2");
  if (c.n() != size()) throw ParameterError("tree: coloring size does not match the tree");
  for (int v = 1; v < size(); ++v)
    if (c[v] == c[parent_[v]]) throw ParameterError("tree: coloring is not proper");
  (slot == 1 ? colors1_ : colors2_) = std::move(c);
  code_.reset();
}

void RootedColoredTree::clear_colorings() {
  colors1_.reset();
  colors2_.reset();
  code_.reset();
}

RootedColoredTree RootedColoredTree::truncated(int d) const {
  if (d < 0) throw ParameterError("tree: truncation depth must be non-negative");
  std::vector<int> keep, relabel(size(), -1);
  for (int v = 0; v < size(); ++v)
    if (depth_[v] <= d) {
      relabel[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  std::vector<int> parent(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) parent[i] = i == 0 ? -1 : relabel[parent_[keep[i]]];
  RootedColoredTree out(std::move(parent));
  for (int slot : {1, 2}) {
    const auto& c = coloring(slot);
    if (!c) continue;
    std::vector<int> colors;
    for (int v : keep) colors.push_back((*c)[v]);
    out.set_coloring(slot, Coloring(c->k, std::move(colors)));
  }
  return out;
}

RootedColoredTree tree_from_ball(const RootedBall& b, const Coloring* sigma1, const Coloring* sigma2) {
  if (b.has_cycle()) throw ParameterError("tree_from_ball: ball contains a cycle");
  const int n = static_cast<int>(b.size());
  std::vector<int> parent(n, -1);
  for (const auto& [u, v] : b.edges) {
    int a = b.local_index(u), c = b.local_index(v);
    if (b.distances[a] > b.distances[c]) std::swap(a, c);
    parent[c] = a;
  }
  // BFS order already puts parents first.
  RootedColoredTree t(std::move(parent));
  int slot = 1;
  for (const Coloring* s : {sigma1, sigma2}) {
    if (!s) continue;
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = (*s)[b.vertices[i]];
    t.set_coloring(slot++, Coloring(s->k, std::move(c)));
  }
  return t;
}

RootedColoredTree sample_gw_tree(double d, int omega, Rng& rng, int max_size) {
  if (!(d >= 0.0) || !std::isfinite(d)) throw ParameterError("sample_gw_tree: d must be a non-negative real");
  if (omega < 0) throw ParameterError("sample_gw_tree: omega must be non-negative");
  std::vector<int> parent{-1}, depth{0};
  if (d > 0.0) {
    std::poisson_distribution<int> offspring(d);
    for (std::size_t h = 0; h < parent.size(); ++h) {
      if (depth[h] >= omega) continue;
      int c = offspring(rng);
      if (parent.size() + static_cast<std::size_t>(c) > static_cast<std::size_t>(max_size))
        throw CapacityError("sample_gw_tree: tree exceeds " + std::to_string(max_size) + " vertices");
      for (int i = 0; i < c; ++i) {
        parent.push_back(static_cast<int>(h));
        depth.push_back(depth[h] + 1);
      }
    }
  }
  return RootedColoredTree(std::move(parent));
}

namespace {
Coloring broadcast(const RootedColoredTree& t, int k, Rng& rng) {
  if (k < 1) throw ParameterError("broadcast_coloring: k must be positive");
  if (k < 2 && t.size() > 1) throw DomainError("broadcast_coloring: a tree with an edge needs k >= 2");
  std::vector<int> c(t.size());
  c[0] = 1 + static_cast<int>(uniform_below(rng, k));
  for (int v = 1; v < t.size(); ++v) {
    int x = 1 + static_cast<int>(uniform_below(rng, k - 1));
    c[v] = x >= c[t.parent(v)] ? x + 1 : x;
  }
  return Coloring(k, std::move(c));
}
}  // namespace

RootedColoredTree broadcast_coloring(const RootedColoredTree& t, int k, Rng& rng) {
  RootedColoredTree out = t;
  out.clear_colorings();
  out.set_coloring(1, broadcast(t, k, rng));
  return out;
}

RootedColoredTree broadcast_dicoloring(const RootedColoredTree& t, int k, Rng& rng) {
  RootedColoredTree out = t;
  out.clear_colorings();
  out.set_coloring(1, broadcast(t, k, rng));
  out.set_coloring(2, broadcast(t, k, rng));
  return out;
}

double gw_shape_probability(const RootedColoredTree& theta, double d, int omega) {
  if (theta.height() > omega) throw ParameterError("gw_shape_probability: theta is deeper than omega");
  if (!(d >= 0.0)) throw ParameterError("gw_shape_probability: d must be non-negative");
  auto codes = subtree_codes(theta, false);
  auto kids = theta.children();
  std::vector<double> p(theta.size(), 1.0);
  for (int v = theta.size() - 1; v >= 0; --v) {
    if (theta.depth(v) == omega) continue;
    const int c = static_cast<int>(kids[v].size());
    // Po(d)(c) times the number of distinct orderings of the child multiset.
    double log_p = -d + (c > 0 ? c * std::log(d) : 0.0);
    std::vector<const std::string*> ks;
    for (int u : kids[v]) {
      ks.push_back(&codes[u]);
      p[v] *= p[u];
    }
    std::sort(ks.begin(), ks.end(), [](auto* a, auto* b) { return *a < *b; });
    for (std::size_t i = 0; i < ks.size();) {
      std::size_t j = i;
      while (j < ks.size() && *ks[j] == *ks[i]) ++j;
      log_p -= std::lgamma(static_cast<double>(j - i) + 1.0);
      i = j;
    }
    if (c > 0 && d == 0.0) {
      p[v] = 0.0;
      continue;
    }
    p[v] *= std::exp(log_p);
  }
  return p[0];
}

double q_target(const RootedColoredTree& theta, const Coloring& tau1, const Coloring& tau2, double d, int omega,
                int k) {
  if (k < 1) throw ParameterError("q_target: k must be positive");
  for (const Coloring* t : {&tau1, &tau2}) {
    if (t->n() != theta.size()) throw ParameterError("q_target: coloring size does not match theta");
    for (int v = 1; v < theta.size(); ++v)
      if ((*t)[v] == (*t)[theta.parent(v)]) throw ParameterError("q_target: tau is not proper on theta");
    for (int c : t->colors)
      if (c < 1 || c > k) throw ParameterError("q_target: tau uses a color outside [k]");
  }
  double z = k * std::pow(static_cast<double>(k - 1), theta.size() - 1);
  return gw_shape_probability(theta, d, omega) / (z * z);
}

std::map<std::string, Rational> tree_ball_distribution(const RootedColoredTree& t, int omega0, int k) {
  if (omega0 < 0 || omega0 > t.height())
    throw ParameterError("tree_ball_distribution: omega0 must lie in [0, height]");
  if (k < 1) throw ParameterError("tree_ball_distribution: k must be positive");
  RootedColoredTree s = t.truncated(omega0);
  s.clear_colorings();
  const int n = s.size();
  if (n > 1 && k < 2) throw DomainError("tree_ball_distribution: no proper 1-coloring of a tree with an edge");
  auto kids = s.children();
  using Dist = std::map<std::string, BigInt>;
  // dist[v][c-1]: subtree code -> number of colorings of the subtree with v colored c.
  std::vector<std::vector<Dist>> dist(n);
  for (int v = n - 1; v >= 0; --v) {
    dist[v].resize(k);
    for (int c = 1; c <= k; ++c) {
      std::map<std::vector<std::string>, BigInt> partial{{{}, BigInt(1)}};
      for (int u : kids[v]) {
        Dist merged;
        for (int cu = 1; cu <= k; ++cu)
          if (cu != c)
            for (const auto& [code, cnt] : dist[u][cu - 1]) merged[code] += cnt;
        std::map<std::vector<std::string>, BigInt> next;
        for (const auto& [multiset, cnt] : partial)
          for (const auto& [code, cnt2] : merged) {
            auto m = multiset;
            m.insert(std::upper_bound(m.begin(), m.end(), code), code);
            next[std::move(m)] += cnt * cnt2;
          }
        partial = std::move(next);
      }
      for (const auto& [multiset, cnt] : partial) {
        std::string code = "(";
        detail::put_varint(code, static_cast<std::uint64_t>(c));
        for (const auto& x : multiset) code += x;
        code += ')';
        dist[v][c - 1][code] += cnt;
      }
    }
    for (int u : kids[v]) std::vector<Dist>().swap(dist[u]);
  }
  BigInt total = 0;
  for (int c = 0; c < k; ++c)
    for (const auto& [code, cnt] : dist[0][c]) total += cnt;
  std::map<std::string, Rational> out;
  for (int c = 0; c < k; ++c)
    for (const auto& [code, cnt] : dist[0][c]) out[detail::wrap_code('T', 1, code)] += Rational(cnt, total);
  return out;
}

namespace trees {
RootedColoredTree path(int n) {
  if (n < 1) throw ParameterError("trees::path: n must be positive");
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v - 1;
  return RootedColoredTree(std::move(parent));
}
RootedColoredTree star(int leaves) {
  if (leaves < 0) throw ParameterError("trees::star: leaves must be non-negative");
  std::vector<int> parent(leaves + 1, 0);
  parent[0] = -1;
  return RootedColoredTree(std::move(parent));
}
}  // namespace trees

}  // namespace replab
