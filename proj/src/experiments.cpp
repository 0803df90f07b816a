#include "replab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "replab/canonical.hpp"
#include "replab/coloring.hpp"
#include "replab/errors.hpp"
#include "replab/local.hpp"
#include "replab/moments.hpp"
#include "replab/overlap.hpp"
#include "replab/parallel.hpp"
#include "replab/replica.hpp"
#include "replab/stats.hpp"
#include "replab/tree.hpp"

namespace replab {

using ojson = nlohmann::ordered_json;

std::uint64_t edges_for_degree(double d, int n) {
  if (!(d >= 0.0)) throw ParameterError("d must be non-negative");
  if (n < 0) throw ParameterError("n must be non-negative");
  // guard against d * n / 2 landing a hair above an integer
  return static_cast<std::uint64_t>(std::ceil(d * n / 2.0 - 1e-9));
}

namespace {

// ---- parameter access ----

std::vector<int> n_list(const ojson& p) { return p.at("n").get<std::vector<int>>(); }

int single_n(const ojson& p) {
  auto ns = n_list(p);
  if (ns.size() != 1) throw ParameterError("this experiment takes a single value of n");
  return ns[0];
}

std::uint64_t m_at(const ojson& p, std::size_t i) { return p.at("m").at(i).get<std::uint64_t>(); }

// d for reference formulas: the given d, else 2m/n.
double degree(const ojson& p, std::size_t i) {
  if (!p.at("d").is_null()) return p.at("d").get<double>();
  const int n = n_list(p).at(i);
  return n > 0 ? 2.0 * static_cast<double>(m_at(p, i)) / n : 0.0;
}

int get_int(const ojson& p, const char* key) { return p.at(key).get<int>(); }
std::uint64_t get_count(const ojson& p, const char* key, std::uint64_t min = 1) {
  const auto v = p.at(key).get<long long>();
  if (v < static_cast<long long>(min))
    throw ParameterError(std::string(key) + " must be at least " + std::to_string(min));
  return static_cast<std::uint64_t>(v);
}

ReportRow summarize(const std::string& name, const std::vector<double>& xs, bool exact = false,
                    std::optional<double> reference = {}) {
  RunningStats s;
  for (double x : xs) s.add(x);
  return {name, s.mean(), s.std_error(), s.count(), exact, reference};
}

ReportRow exact_row(const std::string& name, double value, std::optional<double> reference = {}) {
  return {name, value, 0.0, 0, true, reference};
}

std::string suffix_n(int n) { return "_n" + std::to_string(n); }

std::string colors_label(const Coloring& c) {
  std::string s;
  for (int i = 0; i < c.n(); ++i) s += (i ? "-" : "") + std::to_string(c[i]);
  return s;
}

std::vector<Vertex> distinct_vertices(int n, int l, Rng& rng) {
  if (l < 1 || l > n) throw ParameterError("l must lie in [1, n]");
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < l; ++i) std::swap(all[i], all[i + uniform_below(rng, n - i)]);
  all.resize(l);
  return all;
}

// seed of the i-th n in a trend experiment
std::uint64_t seed_for(std::uint64_t seed, std::size_t i) { return substream_seed(seed, (1ULL << 40) + i); }

// ---- experiments ----

ExperimentReport prop41(const ojson& p, std::uint64_t seed, int workers) {
  const int n = single_n(p), k = get_int(p, "k"), omega = get_int(p, "omega");
  const std::uint64_t m = m_at(p, 0), samples = get_count(p, "samples", 2);
  const double d = degree(p, 0);
  const RootedColoredTree theta = trees::star(1);
  const auto taus = enumerate_colorings(theta.graph(), k);
  std::vector<std::string> codes;
  for (const auto& t : taus) {
    RootedColoredTree c = theta;
    c.set_coloring(1, t);
    codes.push_back(canonical_code(c).bytes);
  }
  const std::size_t T = taus.size();
  auto per_sample = parallel_map<std::vector<double>>(samples, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    auto dg = sample_planted_replica(n, m, k, rng);
    auto freq = q_class_frequencies(dg, omega);
    std::vector<double> q(T * T, 0.0);
    for (std::size_t i = 0; i < T; ++i)
      for (std::size_t j = 0; j < T; ++j) {
        auto it = freq.find({codes[i], codes[j]});
        if (it != freq.end()) q[i * T + j] = it->second;
      }
    return q;
  });
  ExperimentReport r;
  double max_z = 0.0;
  std::uint64_t within = 0;
  for (std::size_t i = 0; i < T; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      std::vector<double> xs;
      for (const auto& q : per_sample) xs.push_back(q[i * T + j]);
      const double target = q_target(theta, taus[i], taus[j], d, omega, k);
      auto row = summarize("Q_" + colors_label(taus[i]) + "_" + colors_label(taus[j]), xs, false, target);
      const double dev = std::abs(row.estimate - target);
      if (row.std_error > 0) max_z = std::max(max_z, dev / row.std_error);
      within += dev <= 3 * row.std_error + 5.0 / n;
      r.rows.push_back(row);
    }
  r.rows.push_back(exact_row("max_abs_z", max_z));
  r.rows.push_back(exact_row("pairs_within_3se_plus_5_over_n", static_cast<double>(within) / (T * T), 1.0));
  r.notes.push_back("theta = root with one child; Q rows named Q_<tau1>_<tau2> with colors root-child");
  return r;
}

ExperimentReport lemma32(const ojson& p, std::uint64_t seed, int workers) {
  const auto ns = n_list(p);
  const int k = get_int(p, "k");
  OverlapExperimentOptions opt;
  opt.exact_pairs = p.at("exact").get<bool>();
  if (!p.at("kappa").is_null()) opt.kappa = p.at("kappa").get<double>();
  const std::uint64_t graphs = get_count(p, "graphs", 2), pairs = get_count(p, "pairs");
  ExperimentReport r;
  std::vector<double> means;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto sub = overlap_concentration_experiment(ns[i], m_at(p, i), k, graphs, pairs, seed_for(seed, i), workers, opt);
    for (auto row : sub.rows) {
      if (row.name == "mean_overlap_distance") means.push_back(row.estimate);
      row.name += suffix_n(ns[i]);
      row.exact = false;
      r.rows.push_back(row);
    }
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) decreasing = decreasing && means[i] < means[i - 1];
  r.rows.push_back(exact_row("strictly_decreasing", decreasing ? 1.0 : 0.0));
  return r;
}

ExperimentReport claim33(const ojson& p, std::uint64_t seed, int workers) {
  const int n = single_n(p);
  auto sub = profile_concentration_experiment(n, m_at(p, 0), get_int(p, "k"), get_int(p, "omega"),
                                              get_count(p, "graphs", 2), get_count(p, "samples"),
                                              p.at("exact").get<bool>(), seed, workers);
  ExperimentReport r;
  r.rows = sub.rows;
  r.notes.push_back("tail_prob_omega_w: E over colorable G(n,m) of P[|alpha(S) - alpha_bar|_2 > sqrt(w/n)]");
  return r;
}

ExperimentReport cor12(const ojson& p, std::uint64_t seed, int workers) {
  const auto ns = n_list(p);
  const int k = get_int(p, "k"), l = get_int(p, "l"), omega = get_int(p, "omega");
  const std::uint64_t graphs = get_count(p, "graphs", 2);
  ExperimentReport r;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const std::uint64_t m = m_at(p, i), s = seed_for(seed, i);
    auto per_graph = parallel_map<std::pair<double, int>>(graphs, workers, [&](std::uint64_t unit) {
      Rng rng = make_stream(s, unit);
      auto cg = sample_colorable_gnm(n, m, k, rng);
      auto roots = distinct_vertices(n, l, rng);
      auto tv = tv_local_vs_uniform(cg.graph, roots, omega, k);
      return std::pair{tv.value, tv.flagged() ? 1 : 0};
    });
    std::vector<double> xs;
    int flagged = 0;
    for (auto [v, f] : per_graph) {
      xs.push_back(v);
      flagged += f;
    }
    r.rows.push_back(summarize("mean_tv" + suffix_n(n), xs));
    r.notes.push_back("n=" + std::to_string(n) + ": " + std::to_string(flagged) + " of " + std::to_string(graphs) +
                      " samples flagged (balls intersect or union has a cycle); kept in the mean");
  }
  return r;
}

// n^-l sum over all l-tuples of TV(joint law of the colors, product of marginals).
double joint_decay(const Graph& g, int k, int l) {
  const auto all = enumerate_colorings(g, k);
  if (all.empty()) throw DomainError("cor13_joint: graph is not k-colorable");
  const int n = g.n();
  const double z = static_cast<double>(all.size());
  std::vector<std::vector<double>> marg(n, std::vector<double>(k, 0.0));
  for (const auto& s : all)
    for (int v = 0; v < n; ++v) marg[v][s[v] - 1] += 1.0 / z;
  std::size_t cells = 1;
  for (int i = 0; i < l; ++i) cells *= k;
  std::vector<int> tuple(l, 0);
  double total = 0.0;
  std::uint64_t tuples = 0;
  std::vector<double> joint(cells);
  for (;;) {
    std::fill(joint.begin(), joint.end(), 0.0);
    for (const auto& s : all) {
      std::size_t idx = 0;
      for (int i = 0; i < l; ++i) idx = idx * k + (s[tuple[i]] - 1);
      joint[idx] += 1.0 / z;
    }
    double tv = 0.0;
    for (std::size_t idx = 0; idx < cells; ++idx) {
      double prod = 1.0;
      std::size_t rest = idx;
      for (int i = l - 1; i >= 0; --i) {
        prod *= marg[tuple[i]][rest % k];
        rest /= k;
      }
      tv += std::abs(joint[idx] - prod);
    }
    total += tv / 2;
    ++tuples;
    int i = l - 1;
    while (i >= 0 && tuple[i] == n - 1) tuple[i--] = 0;
    if (i < 0) break;
    ++tuple[i];
  }
  return total / static_cast<double>(tuples);
}

ExperimentReport cor13(const ojson& p, std::uint64_t seed, int workers) {
  const auto ns = n_list(p);
  const int k = get_int(p, "k"), l = get_int(p, "l");
  if (l < 1 || l > 3) throw ParameterError("cor13_joint: l must lie in [1, 3]");
  const std::uint64_t graphs = get_count(p, "graphs", 2);
  ExperimentReport r;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const std::uint64_t m = m_at(p, i), s = seed_for(seed, i);
    auto xs = parallel_map<double>(graphs, workers, [&](std::uint64_t unit) {
      Rng rng = make_stream(s, unit);
      return joint_decay(sample_colorable_gnm(n, m, k, rng).graph, k, l);
    });
    r.rows.push_back(summarize("mean_joint_tv" + suffix_n(n), xs));
  }
  r.notes.push_back("average over all n^l ordered tuples, repeated vertices included");
  return r;
}

ExperimentReport cor14(const ojson& p, std::uint64_t seed, int workers) {
  const int n = single_n(p), k = get_int(p, "k"), omega = get_int(p, "omega");
  if (omega < 1) throw ParameterError("cor14_recon: omega must be at least 1");
  const std::uint64_t m = m_at(p, 0), graphs = get_count(p, "graphs", 2), samples = get_count(p, "samples", 2),
                      colorings = get_count(p, "colorings");
  const bool exact = p.at("exact").get<bool>();
  const double d = degree(p, 0);
  auto per_graph = parallel_map<std::vector<double>>(graphs, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    auto cg = sample_colorable_gnm(n, m, k, rng);
    Vertex v = static_cast<Vertex>(uniform_below(rng, n));
    std::vector<double> out;
    for (int w = 1; w <= omega; ++w)
      out.push_back(exact ? reconstruction_corr_graph(cg.graph, v, w, k)
                          : reconstruction_corr_graph_mc(cg.graph, v, w, k, colorings, rng).value);
    return out;
  });
  auto tree = reconstruction_corr_tree_profile(d, omega, k, samples, substream_seed(seed, 1ULL << 41), workers);
  ExperimentReport r;
  for (int w = 1; w <= omega; ++w) {
    std::vector<double> xs;
    for (const auto& row : per_graph) xs.push_back(row[w - 1]);
    r.rows.push_back(summarize("graph_corr_omega" + std::to_string(w), xs, false, tree[w - 1].value));
  }
  for (int w = 1; w <= omega; ++w)
    r.rows.push_back({"tree_corr_omega" + std::to_string(w), tree[w - 1].value, tree[w - 1].std_error, samples,
                      false, std::nullopt});
  r.notes.push_back(exact ? "graph corr by exact enumeration per random vertex"
                          : "graph corr with sampled boundary colorings, exact conditional marginals");
  return r;
}

ExperimentReport prop51(const ojson& p, std::uint64_t seed, int workers) {
  const int n = single_n(p), k = get_int(p, "k"), l = get_int(p, "l"), omega = get_int(p, "omega");
  if (l < 1) throw ParameterError("prop51_product: l must be positive");
  if (k < 2) throw ParameterError("prop51_product: k must be at least 2");
  const std::uint64_t m = m_at(p, 0), graphs = get_count(p, "graphs", 2), colorings = get_count(p, "colorings");
  const bool exact = p.at("exact").get<bool>();
  const double d = degree(p, 0);
  const RootedColoredTree theta = trees::star(1);
  std::vector<ColoredShape> shapes;
  double reference = 1.0;
  for (int i = 0; i < l; ++i) {
    const int c = i % k + 1;
    Coloring tau(k, {c, c % k + 1});
    reference *= gw_shape_probability(theta, d, omega) * to_double(colored_orbit_fraction(theta, tau, k));
    shapes.push_back({theta, tau});
  }
  auto xs = parallel_map<double>(graphs, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    auto cg = sample_colorable_gnm(n, m, k, rng);
    return exact ? product_statistic_exact(cg.graph, shapes, omega, k)
                 : product_statistic(cg.graph, shapes, omega, cg.sampler, colorings, rng).value;
  });
  ExperimentReport r;
  auto row = summarize("product_statistic", xs, false, reference);
  r.rows.push_back(row);
  r.rows.push_back(exact_row("z_score", row.std_error > 0 ? (row.estimate - reference) / row.std_error : 0.0));
  r.notes.push_back("shapes: root with one child, tau_i = (i, i+1) cyclically; root tuples summed exactly");
  return r;
}

RootedColoredTree uniformity_tree() { return RootedColoredTree({-1, 0, 0, 1, 1, 2, 5}); }

ExperimentReport gw_uniformity(const ojson& p, std::uint64_t seed, int workers) {
  const int k = get_int(p, "k");
  const std::uint64_t samples = get_count(p, "samples", 1);
  const double d = p.at("d").get<double>();
  const RootedColoredTree t = uniformity_tree();
  const auto cells = enumerate_colorings(t.graph(), k);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i].colors] = i;
  constexpr std::uint64_t chunk = 10000;
  constexpr int degrees = 4;
  const std::uint64_t units = (samples + chunk - 1) / chunk;
  auto parts = parallel_map<std::vector<std::uint64_t>>(units, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    std::vector<std::uint64_t> counts(cells.size() + degrees + 1, 0);
    const std::uint64_t todo = std::min(chunk, samples - unit * chunk);
    for (std::uint64_t s = 0; s < todo; ++s) {
      auto c = broadcast_coloring(t, k, rng);
      ++counts[index.at(c.coloring(1)->colors)];
      const int kids = sample_gw_tree(d, 1, rng).size() - 1;
      ++counts[cells.size() + std::min(kids, degrees)];
    }
    return counts;
  });
  std::vector<std::uint64_t> counts(cells.size(), 0), kids(degrees + 1, 0);
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < cells.size(); ++i) counts[i] += part[i];
    for (int c = 0; c <= degrees; ++c) kids[c] += part[cells.size() + c];
  }
  std::vector<double> expected(cells.size(), 1.0 / static_cast<double>(cells.size()));
  auto chi = chi_square_test(counts, expected);
  ExperimentReport r;
  r.rows.push_back(exact_row("cells", static_cast<double>(cells.size())));
  r.rows.push_back({"chi_square_statistic", chi.statistic, 0.0, samples, false, std::nullopt});
  r.rows.push_back({"chi_square_p_value", chi.p_value, 0.0, samples, false, std::nullopt});
  for (int c = 0; c < degrees; ++c) {
    const double f = static_cast<double>(kids[c]) / samples;
    r.rows.push_back({"root_children_" + std::to_string(c), f, std::sqrt(f * (1 - f) / samples), samples, false,
                      poisson_pmf(d, c)});
  }
  r.notes.push_back("broadcast on the 7-vertex tree with parents (-,0,0,1,1,2,5) against uniform over its proper colorings");
  r.notes.push_back("root_children_c: GW Po(d) root degree frequencies against the Poisson pmf");
  return r;
}

ExperimentReport moment_scan(const ojson& p, std::uint64_t seed, int /*workers*/) {
  const int k = get_int(p, "k"), resolution = get_int(p, "resolution"), points = get_int(p, "samples");
  const double d = p.at("d").get<double>(), eta = p.at("eta").get<double>();
  const std::string csv_path = p.at("scan_csv").get<std::string>();
  std::ostringstream csv;
  ScanVisitor visit;
  const double f_bar = 2 * std::log(static_cast<double>(k)) + d * std::log(1.0 - 1.0 / k);
  if (!csv_path.empty()) {
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) csv << "rho_" << i << "_" << j << ",";
    csv << "f,gap\n";
    visit = [&](std::span<const double> rho, double f) {
      for (double x : rho) csv << format_double(x) << ",";
      csv << format_double(f) << "," << format_double(f_bar - f) << "\n";
    };
  }
  auto scan = separation_scan(d, k, eta, resolution, visit);
  if (!csv_path.empty()) write_file_atomic(csv_path, csv.str());
  const double curvature_eta = 0.999 * std::pow(static_cast<double>(k), -4);
  Rng r1 = make_stream(seed, 0), r2 = make_stream(seed, 1);
  auto simplex = f_gradient_check(d, k, points, curvature_eta, r1, OverlapDomain::simplex);
  auto balanced = f_gradient_check(d, k, points, curvature_eta, r2, OverlapDomain::balanced);
  const std::vector<double> alpha(k, 1.0 / k);
  ExperimentReport r;
  r.rows.push_back(exact_row("f_bar", scan.f_bar, 2 * phi(alpha, d)));
  r.rows.push_back(exact_row("max_f_far", scan.max_far));
  r.rows.push_back(exact_row("gap", scan.gap));
  r.rows.push_back(exact_row("lattice_points", static_cast<double>(scan.points)));
  r.rows.push_back(exact_row("violations", static_cast<double>(scan.violations)));
  r.rows.push_back(exact_row("argmax_stable_entries", scan.argmax_stable_entries));
  r.rows.push_back(exact_row("gradient_norm_fd", simplex.fd_gradient_norm));
  r.rows.push_back(exact_row("gradient_norm_analytic", simplex.analytic_gradient_norm));
  r.rows.push_back(exact_row("hessian_fd_error", std::max(simplex.max_hessian_error, balanced.max_hessian_error)));
  r.rows.push_back({"hessian_top_simplex", simplex.max_top_eigenvalue, 0.0, static_cast<std::uint64_t>(points),
                    false, -2.0});
  r.rows.push_back({"hessian_top_balanced", balanced.max_top_eigenvalue, 0.0, static_cast<std::uint64_t>(points),
                    false, -2.0});
  r.rows.push_back(exact_row("d_cond_asymptotic", d_cond_asymptotic(k)));
  std::string arg = "argmax rho:";
  for (double x : scan.argmax) arg += " " + format_double(x);
  r.notes.push_back(arg);
  r.notes.push_back("lattice: entries a/resolution with every row and column summing to exactly 1/k");
  r.notes.push_back("curvature sampled in the radius sqrt(0.999 k^-4) ball; max eigenvalue over sampled points");
  return r;
}

std::string dicolored_key(const Graph& g, const Coloring& s1, const Coloring& s2) {
  std::string key;
  for (auto [u, v] : g.edges()) key += std::to_string(u) + "-" + std::to_string(v) + ",";
  key += "|";
  for (int c : s1.colors) key += std::to_string(c) + ",";
  key += "|";
  for (int c : s2.colors) key += std::to_string(c) + ",";
  return key;
}

ExperimentReport density_oracle(const ojson& p, std::uint64_t seed, int workers) {
  const int n = single_n(p), k = get_int(p, "k");
  const std::uint64_t m = m_at(p, 0), samples = get_count(p, "samples", 1);
  const std::uint64_t pairs = pair_count(n);
  if (m > pairs) throw ParameterError("density_oracle: m exceeds C(n,2)");
  const BigInt maps = boost::multiprecision::pow(BigInt(k), 2 * n);
  const BigInt graphs = binomial(BigInt(pairs), m);
  if (maps * graphs > default_budget()) throw CapacityError("density_oracle: support enumeration exceeds the budget");

  // support: every (graph, sigma1, sigma2) with positive density
  std::vector<std::vector<Edge>> all_graphs;
  {
    std::vector<int> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<Edge> e;
      for (int x : pick) e.push_back(pair_from_index(n, x));
      all_graphs.push_back(std::move(e));
      int i = static_cast<int>(m) - 1;
      while (i >= 0 && pick[i] == static_cast<int>(pairs - m) + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::map<std::string, std::size_t> index;
  std::vector<double> probs;
  Rational total = 0;
  const std::uint64_t n_maps = static_cast<std::uint64_t>(std::pow(k, n));
  auto decode = [&](std::uint64_t code) {
    std::vector<int> c(n);
    for (int v = 0; v < n; ++v) {
      c[v] = static_cast<int>(code % k) + 1;
      code /= k;
    }
    return Coloring(k, c);
  };
  for (const auto& e : all_graphs) {
    Graph g(n, e);
    for (std::uint64_t a = 0; a < n_maps; ++a) {
      Coloring s1 = decode(a);
      if (!is_proper(g, s1)) continue;
      for (std::uint64_t b = 0; b < n_maps; ++b) {
        Coloring s2 = decode(b);
        if (!is_proper(g, s2)) continue;
        Rational q = planted_density(g, s1, s2, n, m, k);
        if (q == 0) continue;
        index[dicolored_key(g, s1, s2)] = probs.size();
        probs.push_back(to_double(q));
        total += q;
      }
    }
  }
  constexpr std::uint64_t chunk = 20000;
  const std::uint64_t units = (samples + chunk - 1) / chunk;
  auto parts = parallel_map<std::vector<std::uint64_t>>(units, workers, [&](std::uint64_t unit) {
    Rng rng = make_stream(seed, unit);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    const std::uint64_t todo = std::min(chunk, samples - unit * chunk);
    for (std::uint64_t s = 0; s < todo; ++s) {
      auto dg = sample_planted_replica(n, m, k, rng);
      auto it = index.find(dicolored_key(dg.graph, dg.sigma1, dg.sigma2));
      if (it == index.end()) throw DomainError("density_oracle: sampled a dicolored graph outside the support");
      ++counts[it->second];
    }
    return counts;
  });
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < probs.size(); ++i) counts[i] += part[i];
  auto chi = chi_square_test(counts, probs);
  double max_err = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    max_err = std::max(max_err, std::abs(static_cast<double>(counts[i]) / samples - probs[i]));
  ExperimentReport r;
  r.rows.push_back(exact_row("support_size", static_cast<double>(probs.size())));
  r.rows.push_back(exact_row("density_total", to_double(total), 1.0));
  r.rows.push_back({"chi_square_statistic", chi.statistic, 0.0, samples, false, std::nullopt});
  r.rows.push_back({"chi_square_p_value", chi.p_value, 0.0, samples, false, std::nullopt});
  r.rows.push_back({"max_abs_frequency_error", max_err, 0.0, samples, false, std::nullopt});
  r.notes.push_back("density total as an exact rational: " + to_string(total));
  return r;
}

ExperimentReport thm22(const ojson& p, std::uint64_t seed, int workers) {
  const auto ns = n_list(p);
  const int k = get_int(p, "k");
  const double omega = p.at("omega").get<double>();
  const std::uint64_t graphs = get_count(p, "graphs", 2);
  ExperimentReport r;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const std::uint64_t m = m_at(p, i), s = seed_for(seed, i);
    const double ln_ez = std::log(to_double(expected_colorings(n, m, k)));
    auto zs = parallel_map<double>(graphs, workers, [&](std::uint64_t unit) {
      Rng rng = make_stream(s, unit);
      return count_colorings(sample_gnm(n, m, rng), k).convert_to<double>();
    });
    std::vector<double> logs, within;
    std::uint64_t zero = 0;
    for (double z : zs) {
      if (z == 0) {
        ++zero;
        within.push_back(0.0);
        continue;
      }
      logs.push_back(std::log(z));
      within.push_back(std::abs(logs.back() - ln_ez) <= omega ? 1.0 : 0.0);
    }
    RunningStats ls;
    for (double x : logs) ls.add(x);
    const std::string sfx = suffix_n(n);
    r.rows.push_back(exact_row("ln_expected_Z" + sfx, ln_ez));
    r.rows.push_back(exact_row("first_moment_estimate" + sfx, first_moment_estimate(n, m, k)));
    r.rows.push_back(summarize("mean_ln_Z" + sfx, logs, false, ln_ez));
    const double var = ls.variance();
    r.rows.push_back({"var_ln_Z" + sfx, var, ls.count() > 1 ? var * std::sqrt(2.0 / (ls.count() - 1)) : 0.0,
                      ls.count(), false, std::nullopt});
    r.rows.push_back(summarize("within_omega_fraction" + sfx, within));
    r.rows.push_back({"uncolorable_fraction" + sfx, static_cast<double>(zero) / graphs, 0.0, graphs, false,
                      std::nullopt});
  }
  r.notes.push_back("plain G(n,m); ln Z statistics use colorable samples, within_omega counts uncolorable ones as misses");
  r.notes.push_back("var_ln_Z stderr is the normal-theory value var * sqrt(2 / (N - 1))");
  return r;
}

ojson null_json() { return ojson(); }

std::vector<ParamSpec> graph_params(std::vector<int> n, double d) {
  return {{"n", ParamKind::integer_list, n, "vertex counts"},
          {"d", ParamKind::real, d, "average degree; m = ceil(d n / 2)"},
          {"m", ParamKind::integer, null_json(), "edge count (instead of d)"},
          {"k", ParamKind::integer, 3, "number of colors"}};
}

std::vector<ParamSpec> with(std::vector<ParamSpec> base, std::vector<ParamSpec> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

const ParamSpec exact_flag{"exact", ParamKind::boolean, false, "force enumeration paths"};

std::vector<ExperimentInfo> build_registry() {
  std::vector<ExperimentInfo> r;
  r.push_back({"prop41", "planted replica Q statistic against q_target for theta = root + 1 child",
               with(graph_params({300}, 2.0), {{"omega", ParamKind::integer, 1, "ball depth"},
                                               {"samples", ParamKind::integer, 200, "planted replicas"},
                                               exact_flag}),
               prop41});
  r.push_back({"lemma32_overlap", "mean overlap distance of two uniform colorings, per n",
               with(graph_params({8, 10, 12}, 1.0), {{"graphs", ParamKind::integer, 200, "graphs per n"},
                                                     {"pairs", ParamKind::integer, 100, "coloring pairs per graph"},
                                                     {"kappa", ParamKind::real, null_json(), "stability threshold"},
                                                     exact_flag}),
               lemma32});
  r.push_back({"claim33_profile", "Gibbs tail probability of the color profile beyond sqrt(w/n)",
               with(graph_params({10}, 1.0), {{"omega", ParamKind::integer, 4, "largest w"},
                                              {"graphs", ParamKind::integer, 100, "graphs"},
                                              {"samples", ParamKind::integer, 100, "colorings per graph"},
                                              exact_flag}),
               claim33});
  r.push_back({"cor12_trend", "TV between the projected coloring and the uniform coloring of the ball union",
               with(graph_params({8, 10, 12}, 1.0), {{"l", ParamKind::integer, 1, "roots"},
                                                     {"omega", ParamKind::integer, 1, "ball depth"},
                                                     {"graphs", ParamKind::integer, 200, "graphs per n"},
                                                     exact_flag}),
               cor12});
  r.push_back({"cor13_joint", "TV of the joint color law of l vertices from the product of marginals",
               with(graph_params({8, 10, 12}, 1.0), {{"l", ParamKind::integer, 2, "tuple size (1-3)"},
                                                     {"graphs", ParamKind::integer, 100, "graphs per n"},
                                                     exact_flag}),
               cor13});
  r.push_back({"cor14_recon", "reconstruction correlation on random graphs against GW trees, per omega",
               with(graph_params({12}, 1.0), {{"omega", ParamKind::integer, 3, "largest depth"},
                                              {"graphs", ParamKind::integer, 100, "graphs"},
                                              {"samples", ParamKind::integer, 2000, "GW trees"},
                                              {"colorings", ParamKind::integer, 200, "boundary samples per graph"},
                                              exact_flag}),
               cor14});
  r.push_back({"prop51_product", "product statistic over l roots against the tree prediction",
               with(graph_params({150}, 2.0), {{"l", ParamKind::integer, 2, "roots"},
                                               {"omega", ParamKind::integer, 1, "ball depth"},
                                               {"graphs", ParamKind::integer, 200, "graphs"},
                                               {"colorings", ParamKind::integer, 1, "colorings per graph"},
                                               exact_flag}),
               prop51});
  r.push_back({"gw_uniformity", "broadcast coloring against the uniform proper coloring; GW root degrees",
               {{"k", ParamKind::integer, 3, "number of colors"},
                {"d", ParamKind::real, 1.5, "GW offspring mean"},
                {"samples", ParamKind::integer, 100000, "draws"},
                exact_flag},
               gw_uniformity});
  r.push_back({"moment_scan", "separation lattice scan of f and curvature checks near rho-bar",
               {{"k", ParamKind::integer, 3, "number of colors"},
                {"d", ParamKind::real, 2.0, "average degree"},
                {"eta", ParamKind::real, 0.1, "exclusion radius around rho-bar"},
                {"resolution", ParamKind::integer, 60, "lattice denominator (multiple of k)"},
                {"samples", ParamKind::integer, 100, "curvature sample points"},
                {"scan_csv", ParamKind::text, "", "write every lattice point to this CSV"},
                exact_flag},
               moment_scan});
  r.push_back({"density_oracle", "planted replica sampler against the exact planted density",
               {{"n", ParamKind::integer_list, std::vector<int>{4}, "vertices"},
                {"d", ParamKind::real, null_json(), "average degree (instead of m)"},
                {"m", ParamKind::integer, 3, "edges"},
                {"k", ParamKind::integer, 2, "number of colors"},
                {"samples", ParamKind::integer, 100000, "draws"},
                exact_flag},
               density_oracle});
  r.push_back({"thm22_empirical", "spread of ln Z across G(n,m) samples against ln E[Z]",
               with(graph_params({6, 8, 10}, 1.0), {{"graphs", ParamKind::integer, 200, "graphs per n"},
                                                    {"omega", ParamKind::real, 1.0, "window for |ln Z - ln E Z|"},
                                                    exact_flag}),
               thm22});
  return r;
}

const char* kind_name(ParamKind k) {
  switch (k) {
    case ParamKind::integer: return "integer";
    case ParamKind::integer_list: return "integer list";
    case ParamKind::real: return "number";
    case ParamKind::boolean: return "boolean";
    case ParamKind::text: return "string";
  }
  return "?";
}

ojson coerce(const ParamSpec& spec, const ojson& v, const std::string& experiment) {
  auto bad = [&] {
    return ParameterError(experiment + ": parameter '" + spec.key + "' must be a " + kind_name(spec.kind));
  };
  switch (spec.kind) {
    case ParamKind::integer:
      if (!v.is_number_integer()) throw bad();
      return v;
    case ParamKind::integer_list: {
      if (v.is_number_integer()) return ojson::array({v});
      if (!v.is_array() || v.empty()) throw bad();
      for (const auto& x : v)
        if (!x.is_number_integer()) throw bad();
      return v;
    }
    case ParamKind::real:
      if (!v.is_number()) throw bad();
      return v.get<double>();
    case ParamKind::boolean:
      if (!v.is_boolean()) throw bad();
      return v;
    case ParamKind::text:
      if (!v.is_string()) throw bad();
      return v;
  }
  throw bad();
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> registry = build_registry();
  return registry;
}

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& e : list_experiments())
    if (e.name == name) return e;
  throw ParameterError("unknown experiment '" + name + "'");
}

ojson resolve_params(const ExperimentInfo& info, const ojson& given) {
  if (!given.is_object()) throw ParameterError(info.name + ": parameters must be an object");
  for (const auto& [key, value] : given.items()) {
    bool known = false;
    for (const auto& s : info.params) known = known || s.key == key;
    if (!known) throw ParameterError(info.name + ": unknown parameter '" + key + "'");
  }
  const bool has_d = given.contains("d") && !given.at("d").is_null();
  const bool has_m = given.contains("m") && !given.at("m").is_null();
  if (has_d && has_m) throw ParameterError(info.name + ": give exactly one of m and d");
  ojson out = ojson::object();
  for (const auto& s : info.params) {
    if (given.contains(s.key) && !given.at(s.key).is_null())
      out[s.key] = coerce(s, given.at(s.key), info.name);
    else if ((s.key == "d" && has_m) || (s.key == "m" && has_d))
      out[s.key] = nullptr;
    else
      out[s.key] = s.fallback;
  }
  if (out.contains("n")) {
    for (const auto& x : out.at("n"))
      if (x.get<int>() < 1) throw ParameterError(info.name + ": n must be positive");
    // m per n
    ojson ms = ojson::array();
    for (const auto& x : out.at("n")) {
      const int n = x.get<int>();
      if (!out.at("m").is_null() && !out.at("m").is_array()) {
        const auto m = out.at("m").get<long long>();
        if (m < 0) throw ParameterError(info.name + ": m must be non-negative");
        ms.push_back(m);
      } else {
        if (out.at("d").is_null()) throw ParameterError(info.name + ": give one of m and d");
        ms.push_back(edges_for_degree(out.at("d").get<double>(), n));
      }
    }
    out["m"] = ms;
  }
  if (out.contains("k") && out.at("k").get<int>() < 1) throw ParameterError(info.name + ": k must be positive");
  return out;
}

std::string render(const ExperimentReport& report, const std::string& format) {
  if (format == "json") return report_to_json(report).dump(2) + "\n";
  if (format == "csv") return report_to_csv(report);
  throw ParameterError("unknown output format '" + format + "' (json or csv)");
}

ExperimentReport run(const ExperimentConfig& config) {
  const auto& info = find_experiment(config.experiment);
  if (config.format != "json" && config.format != "csv")
    throw ParameterError("unknown output format '" + config.format + "' (json or csv)");
  if (config.workers < 1) throw ParameterError("workers must be at least 1");
  const ojson params = resolve_params(info, config.params);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report = info.body(params, config.seed, config.workers);
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.experiment = info.name;
  report.params = params;
  report.seed = config.seed;
  report.workers = config.workers;
  if (!config.output.empty()) write_file_atomic(config.output, render(report, config.format));
  return report;
}

}  // namespace replab
