#include "replab/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "replab/errors.hpp"

namespace replab {

namespace detail {

void put_varint(std::string& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(static_cast<char>((x & 0x7f) | 0x80));
    x >>= 7;
  }
  out.push_back(static_cast<char>(x));
}

std::string wrap_code(char kind, int colorings, const std::string& body) {
  std::string out;
  out.push_back(kind);
  out.push_back(static_cast<char>(colorings));
  put_varint(out, body.size());
  out += body;
  return out;
}

}  // namespace detail

std::string LocalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

namespace {

std::string node_code(const std::vector<int>& tags, std::vector<const std::string*>& kids) {
  std::sort(kids.begin(), kids.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
  std::size_t len = 2 + tags.size() * 2;
  for (auto* s : kids) len += s->size();
  std::string out;
  out.reserve(len);
  out.push_back('(');
  for (int t : tags) detail::put_varint(out, static_cast<std::uint64_t>(t));
  for (auto* s : kids) out += *s;
  out.push_back(')');
  return out;
}

// Individualization-refinement over the core, keeping the least certificate.
class CoreCanonizer {
 public:
  CoreCanonizer(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& labels,
                std::uint64_t max_leaves)
      : adj_(adj), labels_(labels), max_leaves_(max_leaves) {}

  std::string run(std::vector<int> cells) {
    search(std::move(cells));
    return best_;
  }

 private:
  const std::vector<std::vector<int>>& adj_;
  const std::vector<std::string>& labels_;
  std::uint64_t max_leaves_;
  std::uint64_t leaves_ = 0;
  std::string best_;
  bool have_best_ = false;

  static int densify(std::vector<std::pair<std::vector<int>, int>>& sig, std::vector<int>& cells) {
    std::vector<int> idx(sig.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sig[a].first < sig[b].first; });
    int rank = -1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i == 0 || sig[idx[i]].first != sig[idx[i - 1]].first) ++rank;
      cells[idx[i]] = rank;
    }
    return rank + 1;
  }

  int refine(std::vector<int>& cells) const {
    const int n = static_cast<int>(cells.size());
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) sig[v] = {{cells[v]}, v};
    int count = densify(sig, cells);
    for (;;) {
      for (int v = 0; v < n; ++v) {
        auto& s = sig[v].first;
        s.assign(1, cells[v]);
        std::size_t base = s.size();
        for (int w : adj_[v]) s.push_back(cells[w]);
        std::sort(s.begin() + static_cast<long>(base), s.end());
      }
      int next = densify(sig, cells);
      if (next == count) return count;
      count = next;
    }
  }

  std::string certificate(const std::vector<int>& cells) const {
    const int n = static_cast<int>(cells.size());
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[cells[v]] = v;
    std::string out;
    detail::put_varint(out, static_cast<std::uint64_t>(n));
    for (int v : order) {
      detail::put_varint(out, labels_[v].size());
      out += labels_[v];
    }
    unsigned char acc = 0;
    int bits = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const auto& a = adj_[order[i]];
        acc = static_cast<unsigned char>((acc << 1) | (std::binary_search(a.begin(), a.end(), order[j]) ? 1 : 0));
        if (++bits == 8) {
          out.push_back(static_cast<char>(acc));
          acc = 0;
          bits = 0;
        }
      }
    if (bits) out.push_back(static_cast<char>(acc << (8 - bits)));
    return out;
  }

  void search(std::vector<int> cells) {
    const int n = static_cast<int>(cells.size());
    int count = refine(cells);
    if (count == n) {
      if (++leaves_ > max_leaves_)
        throw CapacityError("canonical_code: core canonicalization exceeded " + std::to_string(max_leaves_) +
                            " search leaves");
      auto cert = certificate(cells);
      if (!have_best_ || cert < best_) {
        best_ = std::move(cert);
        have_best_ = true;
      }
      return;
    }
    std::vector<int> size(count, 0);
    for (int c : cells) ++size[c];
    int target = -1;
    for (int c = 0; c < count; ++c)
      if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
    for (int v = 0; v < n; ++v) {
      if (cells[v] != target) continue;
      std::vector<int> next(n);
      for (int w = 0; w < n; ++w) next[w] = 2 * cells[w] + (cells[w] == target && w != v ? 1 : 0);
      search(std::move(next));
    }
  }
};

}  // namespace

LocalCode canonical_code(const Graph& g, Vertex root, const std::vector<const Coloring*>& colorings,
                         const CanonicalOptions& options) {
  if (root < 0 || root >= g.n()) throw ParameterError("canonical_code: root out of range");
  if (colorings.size() > 2) throw ParameterError("canonical_code: at most two colorings");
  for (auto* c : colorings)
    if (!c || c->n() != g.n()) throw ParameterError("canonical_code: coloring size does not match the graph");
  const int ncol = static_cast<int>(colorings.size());

  // Reachable part in BFS order.
  std::vector<int> local(g.n(), -1), global{root}, dist{0};
  local[root] = 0;
  for (std::size_t h = 0; h < global.size(); ++h)
    for (Vertex w : g.neighbors(global[h]))
      if (local[w] < 0) {
        local[w] = static_cast<int>(global.size());
        global.push_back(w);
        dist.push_back(dist[h] + 1);
      }
  const int n = static_cast<int>(global.size());
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(global[v])) adj[v].push_back(local[w]);
    std::sort(adj[v].begin(), adj[v].end());
  }

  // Strip pendant vertices toward the core; the root always stays.
  std::vector<int> deg(n), attach(n, -1), removal;
  std::vector<char> removed(n, 0);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
  for (int v = 1; v < n; ++v)
    if (deg[v] == 1) removal.push_back(v);
  for (std::size_t h = 0; h < removal.size(); ++h) {
    int u = removal[h];
    removed[u] = 1;
    for (int w : adj[u])
      if (!removed[w]) {
        attach[u] = w;
        if (--deg[w] == 1 && w != 0) removal.push_back(w);
      }
  }
  std::vector<std::vector<int>> hanging(n);
  for (int u : removal) hanging[attach[u]].push_back(u);

  std::vector<std::string> code(n);
  std::vector<int> tags(ncol);
  auto build = [&](int v) {
    for (int i = 0; i < ncol; ++i) tags[i] = (*colorings[i])[global[v]];
    std::vector<const std::string*> kids;
    for (int u : hanging[v]) kids.push_back(&code[u]);
    code[v] = node_code(tags, kids);
    for (int u : hanging[v]) std::string().swap(code[u]);
  };
  for (int u : removal) build(u);

  std::vector<int> core;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) core.push_back(v);
  for (int v : core) build(v);

  if (core.size() == 1) return {detail::wrap_code('T', ncol, code[0]), true};

  std::vector<int> core_index(n, -1);
  for (std::size_t i = 0; i < core.size(); ++i) core_index[core[i]] = static_cast<int>(i);
  const int c = static_cast<int>(core.size());
  std::vector<std::vector<int>> core_adj(c);
  std::vector<std::string> labels(c);
  for (int i = 0; i < c; ++i) {
    for (int w : adj[core[i]])
      if (core_index[w] >= 0) core_adj[i].push_back(core_index[w]);
    std::sort(core_adj[i].begin(), core_adj[i].end());
    labels[i] = std::move(code[core[i]]);
  }
  // Initial cells: ranks of (distance, label); the root is alone at distance 0.
  std::vector<int> idx(c), cells(c);
  std::iota(idx.begin(), idx.end(), 0);
  auto key_less = [&](int a, int b) {
    int da = dist[core[a]], db = dist[core[b]];
    return da != db ? da < db : labels[a] < labels[b];
  };
  std::sort(idx.begin(), idx.end(), key_less);
  int rank = -1;
  for (int i = 0; i < c; ++i) {
    if (i == 0 || key_less(idx[i - 1], idx[i])) ++rank;
    cells[idx[i]] = rank;
  }
  CoreCanonizer canon(core_adj, labels, options.max_leaves);
  return {detail::wrap_code('G', ncol, canon.run(std::move(cells))), false};
}

LocalCode canonical_code(const RootedBall& b, const Coloring* sigma1, const Coloring* sigma2,
                         const CanonicalOptions& options) {
  const int n = static_cast<int>(b.size());
  std::vector<Edge> edges;
  edges.reserve(b.edges.size());
  for (const auto& [u, v] : b.edges) edges.emplace_back(b.local_index(u), b.local_index(v));
  Graph local(n, std::move(edges));
  std::vector<Coloring> restricted;
  for (const Coloring* s : {sigma1, sigma2}) {
    if (!s) continue;
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) {
      Vertex v = b.vertices[i];
      if (v >= s->n()) throw ParameterError("canonical_code: coloring does not cover the ball");
      c[i] = (*s)[v];
    }
    restricted.emplace_back(s->k, std::move(c));
  }
  std::vector<const Coloring*> ptrs;
  for (auto& r : restricted) ptrs.push_back(&r);
  return canonical_code(local, 0, ptrs, options);
}

std::vector<std::string> subtree_codes(const RootedColoredTree& t, bool with_colors) {
  const int n = t.size();
  const int ncol = with_colors ? t.colorings() : 0;
  auto kids = t.children();
  std::vector<std::string> code(n);
  std::vector<int> tags(ncol);
  for (int v = n - 1; v >= 0; --v) {
    for (int i = 0; i < ncol; ++i) tags[i] = (*t.coloring(i + 1))[v];
    std::vector<const std::string*> ks;
    for (int u : kids[v]) ks.push_back(&code[u]);
    code[v] = node_code(tags, ks);
  }
  return code;
}

LocalCode canonical_code(const RootedColoredTree& t) { return {t.canonical_code(), true}; }

const std::string& RootedColoredTree::canonical_code() const {
  if (!code_) {
    // Only the root code is kept; subtree codes are rebuilt bottom-up.
    const int n = size();
    const int ncol = colorings();
    auto kids = children();
    std::vector<std::string> code(n);
    std::vector<int> tags(ncol);
    for (int v = n - 1; v >= 0; --v) {
      for (int i = 0; i < ncol; ++i) tags[i] = (*coloring(i + 1))[v];
      std::vector<const std::string*> ks;
      for (int u : kids[v]) ks.push_back(&code[u]);
      code[v] = node_code(tags, ks);
      for (int u : kids[v]) std::string().swap(code[u]);
    }
    code_ = detail::wrap_code('T', ncol, code[0]);
  }
  return *code_;
}

}  // namespace replab
