// replab <experiment> [options]; `replab list` prints the registry.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "replab/errors.hpp"
#include "replab/experiments.hpp"

using nlohmann::ordered_json;

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const replab::ParameterError*>(&e) || dynamic_cast<const replab::DomainError*>(&e)) return 2;
  if (dynamic_cast<const replab::CapacityError*>(&e)) return 3;
  if (dynamic_cast<const replab::RetryExhaustedError*>(&e)) return 4;
  return 1;
}

const char* kind_label(replab::ParamKind k) {
  switch (k) {
    case replab::ParamKind::integer: return "int";
    case replab::ParamKind::integer_list: return "int list";
    case replab::ParamKind::real: return "real";
    case replab::ParamKind::boolean: return "flag";
    case replab::ParamKind::text: return "path";
  }
  return "";
}

void print_registry() {
  for (const auto& e : replab::list_experiments()) {
    std::cout << e.name << "  " << e.description << "\n";
    for (const auto& p : e.params) {
      std::cout << "    --" << p.key << " (" << kind_label(p.kind) << ", default "
                << (p.fallback.is_null() ? std::string("unset") : p.fallback.dump()) << ")  " << p.help << "\n";
    }
  }
}

// Options shared by every experiment subcommand; only those given reach params.
struct Options {
  std::vector<int> n;
  std::optional<double> d, eta, kappa, omega_real;
  std::optional<long long> m, k, l, samples, pairs, graphs, colorings, resolution;
  std::string scan_csv;
  bool exact = false;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output, format = "json";
};

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "vertex count(s)")->delimiter(',');
  sub->add_option("--d", o.d, "average degree (m = ceil(d n / 2))");
  sub->add_option("--m", o.m, "edge count");
  sub->add_option("--k", o.k, "number of colors");
  sub->add_option("--omega", o.omega_real, "ball depth / window");
  sub->add_option("--l", o.l, "number of roots");
  sub->add_option("--samples", o.samples, "Monte Carlo samples");
  sub->add_option("--pairs", o.pairs, "coloring pairs per graph");
  sub->add_option("--graphs", o.graphs, "graphs per n");
  sub->add_option("--colorings", o.colorings, "colorings per graph");
  sub->add_option("--eta", o.eta, "exclusion radius");
  sub->add_option("--kappa", o.kappa, "stability threshold override");
  sub->add_option("--resolution", o.resolution, "lattice denominator");
  sub->add_option("--scan-csv", o.scan_csv, "write lattice points to this CSV");
  sub->add_flag("--exact", o.exact, "force enumeration paths");
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--workers", o.workers, "worker threads");
  sub->add_option("--output", o.output, "output file");
  sub->add_option("--format", o.format, "json or csv");
}

ordered_json to_params(const replab::ExperimentInfo& info, const Options& o) {
  ordered_json p = ordered_json::object();
  if (!o.n.empty()) p["n"] = o.n;
  if (o.d) p["d"] = *o.d;
  if (o.m) p["m"] = *o.m;
  if (o.k) p["k"] = *o.k;
  if (o.omega_real) {
    // omega is an integer depth everywhere except thm22's window
    bool real = false;
    for (const auto& s : info.params) real = real || (s.key == "omega" && s.kind == replab::ParamKind::real);
    const double w = *o.omega_real;
    if (real) p["omega"] = w;
    else if (w == static_cast<double>(static_cast<long long>(w))) p["omega"] = static_cast<long long>(w);
    else throw replab::ParameterError("--omega must be an integer for " + info.name);
  }
  if (o.l) p["l"] = *o.l;
  if (o.samples) p["samples"] = *o.samples;
  if (o.pairs) p["pairs"] = *o.pairs;
  if (o.graphs) p["graphs"] = *o.graphs;
  if (o.colorings) p["colorings"] = *o.colorings;
  if (o.eta) p["eta"] = *o.eta;
  if (o.kappa) p["kappa"] = *o.kappa;
  if (o.resolution) p["resolution"] = *o.resolution;
  if (!o.scan_csv.empty()) p["scan_csv"] = o.scan_csv;
  if (o.exact) p["exact"] = true;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"replica and local-structure experiments for random graph colorings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", REPLAB_VERSION);
  app.add_subcommand("list", "list experiments and their parameters");
  Options opts;
  for (const auto& e : replab::list_experiments()) add_options(app.add_subcommand(e.name, e.description), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "list") {
    print_registry();
    return 0;
  }
  try {
    const auto& info = replab::find_experiment(chosen->get_name());
    replab::ExperimentConfig config;
    config.experiment = info.name;
    config.params = to_params(info, opts);
    config.seed = opts.seed;
    config.workers = opts.workers;
    config.output = opts.output;
    config.format = opts.format;
    auto report = replab::run(config);
    if (config.output.empty()) std::cout << replab::render(report, config.format);
    std::fprintf(stderr, "%s: %.3f s\n", info.name.c_str(), report.wall_time);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "replab: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
