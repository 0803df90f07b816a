#include "replab/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include <nlohmann/json.hpp>

#include "replab/errors.hpp"

namespace replab {

BigInt binomial(const BigInt& n, std::uint64_t r) {
  if (n < 0 || BigInt(r) > n) return 0;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::uint64_t default_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("REPLAB_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{100'000'000};
  }();
  return budget;
}

Coloring::Coloring(int k_, std::vector<int> colors_) : k(k_), colors(std::move(colors_)) {
  if (k < 1) throw ParameterError("coloring: k must be at least 1");
  for (int c : colors)
    if (c < 1 || c > k) throw ParameterError("coloring: color " + std::to_string(c) + " outside [1," + std::to_string(k) + "]");
}

Coloring Coloring::constant(int n, int k, int color) { return Coloring(k, std::vector<int>(n, color)); }

std::vector<int> Coloring::class_sizes() const {
  std::vector<int> sizes(k, 0);
  for (int c : colors) ++sizes[c - 1];
  return sizes;
}

void to_json(nlohmann::json& j, const Coloring& c) { j = c.colors; }

ColorProfile ColorProfile::of(const Coloring& sigma) { return {sigma.n(), sigma.class_sizes()}; }

ColorProfile ColorProfile::from_fractions(std::span<const Rational> alpha, int n) {
  ColorProfile p{n, {}};
  Rational total = 0;
  for (const auto& a : alpha) {
    Rational scaled = a * n;
    if (a < 0 || boost::multiprecision::denominator(scaled) != 1)
      throw ParameterError("color profile: n*alpha_i = " + to_string(scaled) + " is not a non-negative integer");
    p.counts.push_back(boost::multiprecision::numerator(scaled).convert_to<int>());
    total += a;
  }
  if (total != 1) throw ParameterError("color profile: entries sum to " + to_string(total));
  return p;
}

std::vector<double> ColorProfile::fractions() const {
  std::vector<double> out;
  for (int c : counts) out.push_back(static_cast<double>(c) / n);
  return out;
}

std::vector<double> OverlapMatrix::flattened() const {
  std::vector<double> out;
  for (int c : counts) out.push_back(static_cast<double>(c) / n);
  return out;
}

OverlapMatrix overlap(const Coloring& sigma, const Coloring& tau) {
  if (sigma.n() != tau.n()) throw ParameterError("overlap: colorings differ in length");
  if (sigma.k != tau.k) throw ParameterError("overlap: colorings differ in k");
  OverlapMatrix rho{sigma.k, sigma.n(), std::vector<int>(static_cast<std::size_t>(sigma.k) * sigma.k, 0)};
  for (int v = 0; v < sigma.n(); ++v) ++rho.counts[(sigma[v] - 1) * sigma.k + (tau[v] - 1)];
  return rho;
}

bool is_proper(const Graph& g, const Coloring& sigma) {
  if (sigma.n() != g.n())
    throw ParameterError("is_proper: coloring has " + std::to_string(sigma.n()) + " entries for " +
                         std::to_string(g.n()) + " vertices");
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return sigma[e.first] == sigma[e.second]; });
}

namespace {
std::uint64_t choose2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }
}  // namespace

std::uint64_t forbidden_count(const Coloring& sigma) {
  std::uint64_t total = 0;
  for (int s : sigma.class_sizes()) total += choose2(static_cast<std::uint64_t>(s));
  return total;
}

std::uint64_t forbidden_count_pair(const Coloring& sigma, const Coloring& tau) {
  OverlapMatrix rho = overlap(sigma, tau);
  std::uint64_t both = 0;
  for (int c : rho.counts) both += choose2(static_cast<std::uint64_t>(c));
  return forbidden_count(sigma) + forbidden_count(tau) - both;
}

std::uint64_t forbidden_count_pair_scan(const Coloring& sigma, const Coloring& tau) {
  if (sigma.n() != tau.n()) throw ParameterError("forbidden_count_pair: colorings differ in length");
  std::uint64_t total = 0;
  for (int u = 0; u < sigma.n(); ++u)
    for (int v = u + 1; v < sigma.n(); ++v)
      if (sigma[u] == sigma[v] || tau[u] == tau[v]) ++total;
  return total;
}

ColoringEnumerator::ColoringEnumerator(const Graph& g, int k, std::uint64_t budget)
    : g_(g), k_(k), budget_(budget) {
  if (k < 1) throw ParameterError("enumerate_colorings: k must be at least 1");
  current_.k = k;
  current_.colors.assign(g.n(), 0);
}

bool ColoringEnumerator::admissible(Vertex v, int color) const {
  for (Vertex w : g_.neighbors(v)) {
    if (w >= v) break;
    if (current_.colors[w] == color) return false;
  }
  return true;
}

bool ColoringEnumerator::advance_from(int v) {
  auto& colors = current_.colors;
  const int n = g_.n();
  while (v >= 0) {
    int c = colors[v];
    colors[v] = 0;
    bool placed = false;
    for (++c; c <= k_; ++c) {
      if (++states_ > budget_)
        throw CapacityError("coloring enumeration exceeded the budget of " + std::to_string(budget_) +
                            " states (set REPLAB_BUDGET to raise it)");
      if (admissible(v, c)) {
        colors[v] = c;
        placed = true;
        break;
      }
    }
    if (!placed) {
      --v;
      continue;
    }
    if (v == n - 1) return true;
    ++v;
  }
  return false;
}

bool ColoringEnumerator::next() {
  if (done_) return false;
  bool found;
  if (!started_) {
    started_ = true;
    found = g_.n() == 0 ? true : advance_from(0);
  } else {
    found = g_.n() == 0 ? false : advance_from(g_.n() - 1);
  }
  if (!found) done_ = true;
  return found;
}

std::vector<Coloring> enumerate_colorings(const Graph& g, int k, std::uint64_t budget) {
  std::vector<Coloring> out;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) out.push_back(it.current());
  return out;
}

BigInt count_colorings_bruteforce(const Graph& g, int k, std::uint64_t budget) {
  BigInt count = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next()) ++count;
  return count;
}

BigInt count_colorings_forest(const Graph& g, int k) {
  if (!g.is_forest()) throw ParameterError("count_colorings_forest: graph has a cycle");
  if (k < 1) throw ParameterError("count_colorings: k must be at least 1");
  auto label = g.components();
  std::vector<int> size(g.n(), 0);
  for (int c : label) ++size[c];
  BigInt total = 1;
  for (int s : size) {
    if (s == 0) continue;
    total *= k;
    total *= boost::multiprecision::pow(BigInt(k - 1), static_cast<unsigned>(s - 1));
  }
  return total;
}

BigInt count_colorings(const Graph& g, int k, std::uint64_t budget) {
  if (g.is_forest()) return count_colorings_forest(g, k);
  return count_colorings_bruteforce(g, k, budget);
}

BigInt count_by_profile(const Graph& g, int k, const ColorProfile& alpha, std::uint64_t budget) {
  if (static_cast<int>(alpha.counts.size()) != k || alpha.n != g.n())
    throw ParameterError("count_by_profile: profile does not match (n, k)");
  if (std::accumulate(alpha.counts.begin(), alpha.counts.end(), 0) != g.n())
    throw ParameterError("count_by_profile: class sizes do not sum to n");
  BigInt count = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next())
    if (it.current().class_sizes() == alpha.counts) ++count;
  return count;
}

BigInt count_pairs_by_overlap(const Graph& g, int k, const OverlapMatrix& rho, std::uint64_t budget) {
  if (rho.k != k || rho.n != g.n()) throw ParameterError("count_pairs_by_overlap: overlap does not match (n, k)");
  auto census = overlap_census(g, k, budget);
  auto it = census.find(rho);
  return it == census.end() ? BigInt(0) : it->second;
}

std::map<OverlapMatrix, BigInt> overlap_census(const Graph& g, int k, std::uint64_t budget) {
  auto all = enumerate_colorings(g, k, budget);
  std::uint64_t pairs = static_cast<std::uint64_t>(all.size()) * all.size();
  if (pairs > budget)
    throw CapacityError("overlap census: " + std::to_string(pairs) + " coloring pairs exceed the budget of " +
                        std::to_string(budget));
  std::map<OverlapMatrix, BigInt> census;
  for (const auto& a : all)
    for (const auto& b : all) census[overlap(a, b)] += 1;
  return census;
}

Rational prob_proper_exact(const Coloring& sigma, int n, std::uint64_t m) {
  if (sigma.n() != n) throw ParameterError("prob_proper_exact: coloring length differs from n");
  const std::uint64_t slots = pair_count(static_cast<std::uint64_t>(n));
  if (m > slots) throw ParameterError("prob_proper_exact: m exceeds C(n,2)");
  const BigInt allowed = BigInt(slots) - BigInt(forbidden_count(sigma));
  return Rational(binomial(allowed, m), binomial(BigInt(slots), m));
}

Coloring sample_uniform_map(int n, int k, Rng& rng) {
  std::uniform_int_distribution<int> color(1, k);
  std::vector<int> c(n);
  for (auto& x : c) x = color(rng);
  return Coloring(k, std::move(c));
}

// ---------------------------------------------------------------------------
// Bucket elimination with backward sampling.

struct UniformColoringSampler::Elimination {
  struct Factor {
    std::vector<Vertex> scope;  // sorted
    std::vector<double> table;  // index = sum (color(scope[i]) - 1) * k^i
  };

  int k;
  std::vector<Factor> factors;
  std::vector<Vertex> order;                   // elimination order
  std::vector<std::vector<int>> bucket;        // factors consumed when eliminating order[i]

  double eval(const Factor& f, const std::vector<int>& colors) const {
    std::size_t idx = 0, stride = 1;
    for (Vertex v : f.scope) {
      idx += static_cast<std::size_t>(colors[v] - 1) * stride;
      stride *= static_cast<std::size_t>(k);
    }
    return f.table[idx];
  }
};

namespace {

// Greedy min-fill, ties by degree; markedly narrower than min-degree on random graphs.
std::vector<Vertex> min_fill_order(const Graph& g) {
  const int n = g.n();
  std::vector<std::vector<Vertex>> nbr(n);
  for (Vertex v = 0; v < n; ++v) {
    nbr[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    std::sort(nbr[v].begin(), nbr[v].end());
  }
  auto fill = [&](Vertex v) {
    std::size_t missing = 0;
    const auto& c = nbr[v];
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        missing += !std::binary_search(nbr[c[i]].begin(), nbr[c[i]].end(), c[j]);
    return missing;
  };
  std::vector<char> gone(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    std::size_t best_fill = 0, best_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      const std::size_t deg = nbr[v].size();
      if (best >= 0 && deg > best_deg && best_fill == 0) continue;
      const std::size_t f = fill(v);
      if (best < 0 || f < best_fill || (f == best_fill && deg < best_deg)) {
        best = v;
        best_fill = f;
        best_deg = deg;
      }
    }
    gone[best] = 1;
    order.push_back(best);
    const auto clique = nbr[best];
    for (Vertex u : clique) {
      auto& list = nbr[u];
      list.erase(std::remove(list.begin(), list.end(), best), list.end());
      for (Vertex w : clique)
        if (w != u && !std::binary_search(list.begin(), list.end(), w))
          list.insert(std::upper_bound(list.begin(), list.end(), w), w);
    }
    nbr[best].clear();
  }
  return order;
}

}  // namespace

UniformColoringSampler::UniformColoringSampler(const Graph& g, int k, const SamplerOptions& options)
    : g_(std::make_shared<const Graph>(g)), k_(k) {
  if (k < 1) throw ParameterError("uniform coloring sampler: k must be at least 1");
  if (g.is_forest()) {
    if (k == 1 && g.m() > 0) throw DomainError("graph with an edge has no proper 1-coloring");
    method_ = SamplerMethod::forest;
    log_count_ = std::log(count_colorings_forest(g, k).convert_to<double>());
    return;
  }
  if (g.n() <= options.enumeration_max_n) {
    method_ = SamplerMethod::enumeration;
    ColoringEnumerator it(g, k, options.budget);
    while (it.next()) {
      listed_.push_back(it.current());
      if (listed_.size() > options.max_listed)
        throw CapacityError("uniform coloring sampler: more than " + std::to_string(options.max_listed) +
                            " colorings to list");
    }
    if (listed_.empty()) throw DomainError("graph is not " + std::to_string(k) + "-colorable");
    log_count_ = std::log(static_cast<double>(listed_.size()));
    return;
  }

  method_ = SamplerMethod::elimination;
  auto el = std::make_unique<Elimination>();
  el->k = k;
  const int n = g.n();
  std::vector<std::vector<int>> touching(n);
  auto add_factor = [&](Elimination::Factor f) {
    int id = static_cast<int>(el->factors.size());
    for (Vertex v : f.scope) touching[v].push_back(id);
    el->factors.push_back(std::move(f));
  };
  for (const auto& [u, v] : g.edges()) {
    Elimination::Factor f{{u, v}, std::vector<double>(static_cast<std::size_t>(k) * k, 1.0)};
    for (int c = 0; c < k; ++c) f.table[c * k + c] = 0.0;
    add_factor(std::move(f));
  }
  std::vector<char> consumed;
  el->order = min_fill_order(g);
  el->bucket.resize(n);
  double log_scale = 0.0;
  std::vector<int> colors(n, 1);
  for (int step = 0; step < n; ++step) {
    const Vertex x = el->order[step];
    consumed.resize(el->factors.size(), 0);
    std::vector<int> mine;
    for (int id : touching[x])
      if (!consumed[id]) {
        consumed[id] = 1;
        mine.push_back(id);
      }
    el->bucket[step] = mine;
    std::vector<Vertex> scope;
    for (int id : mine)
      for (Vertex v : el->factors[id].scope)
        if (v != x) scope.push_back(v);
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    double entries = std::pow(static_cast<double>(k), static_cast<double>(scope.size()));
    if (entries > static_cast<double>(options.max_table))
      throw CapacityError("uniform coloring sampler: elimination table of " + std::to_string(entries) +
                          " entries exceeds the limit of " + std::to_string(options.max_table));
    Elimination::Factor out{scope, std::vector<double>(static_cast<std::size_t>(entries), 0.0)};
    for (std::size_t idx = 0; idx < out.table.size(); ++idx) {
      std::size_t rest = idx;
      for (Vertex v : scope) {
        colors[v] = static_cast<int>(rest % k) + 1;
        rest /= k;
      }
      double sum = 0.0;
      for (int c = 1; c <= k; ++c) {
        colors[x] = c;
        double w = 1.0;
        for (int id : mine) {
          w *= el->eval(el->factors[id], colors);
          if (w == 0.0) break;
        }
        sum += w;
      }
      out.table[idx] = sum;
    }
    double peak = *std::max_element(out.table.begin(), out.table.end());
    if (peak == 0.0) throw DomainError("graph is not " + std::to_string(k) + "-colorable");
    for (auto& t : out.table) t /= peak;
    log_scale += std::log(peak);
    if (!scope.empty()) add_factor(std::move(out));
  }
  log_count_ = log_scale;
  elimination_ = std::move(el);
}

UniformColoringSampler::~UniformColoringSampler() = default;
UniformColoringSampler::UniformColoringSampler(UniformColoringSampler&&) noexcept = default;
UniformColoringSampler& UniformColoringSampler::operator=(UniformColoringSampler&&) noexcept = default;

Coloring UniformColoringSampler::sample(Rng& rng) const {
  const Graph& g = *g_;
  const int n = g.n();
  std::vector<int> colors(n, 0);
  switch (method_) {
    case SamplerMethod::forest: {
      std::uniform_int_distribution<int> root_color(1, k_);
      std::uniform_int_distribution<int> child_color(1, std::max(1, k_ - 1));
      std::vector<Vertex> queue;
      for (Vertex s = 0; s < n; ++s) {
        if (colors[s]) continue;
        colors[s] = root_color(rng);
        queue.assign(1, s);
        for (std::size_t h = 0; h < queue.size(); ++h) {
          Vertex u = queue[h];
          for (Vertex w : g.neighbors(u)) {
            if (colors[w]) continue;
            int c = child_color(rng);
            colors[w] = c >= colors[u] ? c + 1 : c;
            queue.push_back(w);
          }
        }
      }
      break;
    }
    case SamplerMethod::enumeration:
      return listed_[uniform_below(rng, listed_.size())];
    case SamplerMethod::elimination: {
      const auto& el = *elimination_;
      std::vector<double> weight(k_);
      for (int step = n - 1; step >= 0; --step) {
        const Vertex x = el.order[step];
        double total = 0.0;
        for (int c = 1; c <= k_; ++c) {
          colors[x] = c;
          double w = 1.0;
          for (int id : el.bucket[step]) w *= el.eval(el.factors[id], colors);
          weight[c - 1] = w;
          total += w;
        }
        double u = uniform01(rng) * total;
        int chosen = k_;
        for (int c = 1; c <= k_; ++c) {
          if (weight[c - 1] > 0.0 && u < weight[c - 1]) {
            chosen = c;
            break;
          }
          u -= weight[c - 1];
        }
        while (weight[chosen - 1] == 0.0) --chosen;  // round-off at the top end
        colors[x] = chosen;
      }
      break;
    }
  }
  return Coloring(k_, std::move(colors));
}

Coloring sample_uniform_coloring(const Graph& g, int k, Rng& rng, const SamplerOptions& options) {
  return UniformColoringSampler(g, k, options).sample(rng);
}

bool is_colorable(const Graph& g, int k, std::uint64_t budget) {
  if (g.is_forest()) return k >= 2 || g.m() == 0;
  if (k < 1) throw ParameterError("is_colorable: k must be at least 1");
  if (g.n() > SamplerOptions{}.enumeration_max_n) {
    SamplerOptions opts;
    opts.budget = budget;
    try {
      UniformColoringSampler probe(g, k, opts);
      return true;
    } catch (const DomainError&) {
      return false;
    } catch (const CapacityError&) {
      // tables too wide, fall back to backtracking
    }
  }
  ColoringEnumerator it(g, k, budget);
  return it.next();
}

double gibbs_average_exact(const Graph& g, int k, int l, const GibbsStatistic& statistic, std::uint64_t budget) {
  if (l < 1) throw ParameterError("gibbs_average: l must be positive");
  auto all = enumerate_colorings(g, k, budget);
  if (all.empty()) throw DomainError("gibbs_average: graph is not " + std::to_string(k) + "-colorable");
  double tuples = std::pow(static_cast<double>(all.size()), l);
  if (tuples > static_cast<double>(budget))
    throw CapacityError("gibbs_average: " + std::to_string(tuples) + " coloring tuples exceed the budget");
  std::vector<std::size_t> idx(l, 0);
  std::vector<Coloring> tuple(l, all[0]);
  double sum = 0.0;
  for (;;) {
    for (int i = 0; i < l; ++i) tuple[i] = all[idx[i]];
    sum += statistic(tuple);
    int pos = l - 1;
    while (pos >= 0 && ++idx[pos] == all.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return sum / tuples;
}

Estimate gibbs_average_mc(const Graph& g, int k, int l, const GibbsStatistic& statistic, std::uint64_t samples,
                          Rng& rng) {
  if (l < 1) throw ParameterError("gibbs_average: l must be positive");
  if (samples < 2) throw ParameterError("gibbs_average: need at least 2 samples");
  UniformColoringSampler sampler(g, k);
  std::vector<Coloring> tuple(l);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& c : tuple) c = sampler.sample(rng);
    double x = statistic(tuple);
    sum += x;
    sum_sq += x * x;
  }
  double mean = sum / samples;
  double var = std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
  return {mean, std::sqrt(var / samples), samples, false};
}

}  // namespace replab
