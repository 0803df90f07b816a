#include "replab/overlap.hpp"

#include <cmath>

#include "replab/errors.hpp"
#include "replab/parallel.hpp"
#include "replab/replica.hpp"
#include "replab/stats.hpp"

namespace replab {

double overlap_distance(const OverlapMatrix& rho) {
  const double u = 1.0 / (static_cast<double>(rho.k) * rho.k);
  double s = 0.0;
  for (int c : rho.counts) {
    double x = static_cast<double>(c) / rho.n - u;
    s += x * x;
  }
  return std::sqrt(s);
}

double profile_distance(const Coloring& sigma) {
  const double u = 1.0 / sigma.k;
  double s = 0.0;
  for (int c : sigma.class_sizes()) {
    double x = static_cast<double>(c) / sigma.n() - u;
    s += x * x;
  }
  return std::sqrt(s);
}

double kappa_default(int k) {
  const double l = std::log(static_cast<double>(k));
  return 1.0 - std::pow(l, 20) / k;
}

StabilityClass classify_stability(const OverlapMatrix& rho, int k, std::optional<double> kappa) {
  if (k < 2) throw ParameterError("classify_stability: k must be at least 2");
  if (rho.k != k) throw ParameterError("classify_stability: overlap matrix is not k x k");
  StabilityClass out;
  out.kappa = kappa ? *kappa : kappa_default(k);
  if (!(out.kappa > 0.0))
    throw DomainError("classify_stability: kappa = " + std::to_string(out.kappa) +
                      " is not positive; pass an explicit kappa for small k");
  const long double bound = static_cast<long double>(out.kappa) * rho.n;
  for (int c : rho.counts) {
    const long long x = static_cast<long long>(k) * c;  // n * k * rho_ij
    if (static_cast<long double>(x) >= bound) ++out.s;
    if (100 * x > 51LL * rho.n && static_cast<long double>(x) < bound) out.separable = false;
  }
  return out;
}

BigInt cluster_size(const Graph& g, const Coloring& sigma, int k, std::optional<double> kappa,
                    std::uint64_t budget) {
  if (sigma.n() != g.n() || sigma.k != k) throw ParameterError("cluster_size: sigma does not match (g, k)");
  BigInt count = 0;
  ColoringEnumerator it(g, k, budget);
  while (it.next())
    if (classify_stability(overlap(sigma, it.current()), k, kappa).s == k) ++count;
  return count;
}

namespace {
ReportRow summarize(const std::string& name, const std::vector<double>& xs, bool exact = false) {
  RunningStats s;
  for (double x : xs) s.add(x);
  return {name, s.mean(), s.std_error(), s.count(), exact, std::nullopt};
}
}  // namespace

ExperimentReport overlap_concentration_experiment(int n, std::uint64_t m, int k, std::uint64_t graphs,
                                                  std::uint64_t pairs, std::uint64_t seed, int workers,
                                                  const OverlapExperimentOptions& options) {
  if (graphs < 2 || (!options.exact_pairs && pairs < 1))
    throw ParameterError("overlap experiment: need graphs >= 2 and pairs >= 1");
  if (options.kappa && !(*options.kappa > 0.0)) throw DomainError("overlap experiment: kappa must be positive");
  // per graph: mean distance, fraction of k-stable pairs
  auto per_graph = parallel_map<std::pair<double, double>>(graphs, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    auto cg = sample_colorable_gnm(n, m, k, rng);
    auto stable = [&](const OverlapMatrix& rho) {
      return options.kappa && classify_stability(rho, k, options.kappa).s == k ? 1.0 : 0.0;
    };
    double dist = 0.0, st = 0.0;
    if (options.exact_pairs) {
      BigInt total = 0;
      for (const auto& [rho, count] : overlap_census(cg.graph, k)) {
        const double c = count.convert_to<double>();
        dist += c * overlap_distance(rho);
        st += c * stable(rho);
        total += count;
      }
      const double z2 = total.convert_to<double>();
      return std::pair{dist / z2, st / z2};
    }
    for (std::uint64_t t = 0; t < pairs; ++t) {
      Coloring a = cg.sampler.sample(rng), b = cg.sampler.sample(rng);
      auto rho = overlap(a, b);
      dist += overlap_distance(rho);
      st += stable(rho);
    }
    return std::pair{dist / static_cast<double>(pairs), st / static_cast<double>(pairs)};
  });
  ExperimentReport r;
  r.experiment = "lemma32_overlap";
  r.params = {{"n", n}, {"m", m}, {"k", k}, {"graphs", graphs}, {"pairs", options.exact_pairs ? 0 : pairs},
              {"exact", options.exact_pairs}};
  if (options.kappa) r.params["kappa"] = *options.kappa;
  r.seed = seed;
  r.workers = workers;
  std::vector<double> d, s;
  for (auto [x, y] : per_graph) {
    d.push_back(x);
    s.push_back(y);
  }
  r.rows.push_back(summarize("mean_overlap_distance", d, false));
  if (options.kappa) r.rows.push_back(summarize("stable_pair_fraction", s, false));
  return r;
}

ExperimentReport profile_concentration_experiment(int n, std::uint64_t m, int k, int omega_bound,
                                                  std::uint64_t graphs, std::uint64_t colorings, bool exact_gibbs,
                                                  std::uint64_t seed, int workers) {
  if (omega_bound < 1) throw ParameterError("profile experiment: omega_bound must be positive");
  if (graphs < 2 || (!exact_gibbs && colorings < 1))
    throw ParameterError("profile experiment: need graphs >= 2 and colorings >= 1");
  auto per_graph = parallel_map<std::vector<double>>(graphs, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    auto cg = sample_colorable_gnm(n, m, k, rng);
    std::vector<double> hits(omega_bound, 0.0);
    auto tally = [&](const Coloring& c) {
      const double dist = profile_distance(c);
      for (int w = 1; w <= omega_bound; ++w)
        if (dist > std::sqrt(static_cast<double>(w) / n)) hits[w - 1] += 1.0;
    };
    double total;
    if (exact_gibbs) {
      total = 0;
      ColoringEnumerator it(cg.graph, k);
      while (it.next()) {
        tally(it.current());
        total += 1.0;
      }
    } else {
      for (std::uint64_t t = 0; t < colorings; ++t) tally(cg.sampler.sample(rng));
      total = static_cast<double>(colorings);
    }
    for (auto& h : hits) h /= total;
    return hits;
  });
  ExperimentReport r;
  r.experiment = "claim33_profile";
  r.params = {{"n", n}, {"m", m}, {"k", k}, {"omega_bound", omega_bound}, {"graphs", graphs},
              {"colorings", exact_gibbs ? 0 : colorings}, {"exact_gibbs", exact_gibbs}};
  r.seed = seed;
  r.workers = workers;
  for (int w = 1; w <= omega_bound; ++w) {
    std::vector<double> xs;
    for (const auto& g : per_graph) xs.push_back(g[w - 1]);
    r.rows.push_back(summarize("tail_prob_omega_" + std::to_string(w), xs, false));
  }
  return r;
}

}  // namespace replab
