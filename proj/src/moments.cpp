#include "replab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "replab/errors.hpp"

namespace replab {

SimplexPoint::SimplexPoint(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) throw ParameterError("SimplexPoint: empty");
  double s = 0.0;
  for (double x : values) {
    if (!(x >= 0.0)) throw ParameterError("SimplexPoint: negative entry");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ParameterError("SimplexPoint: entries do not sum to 1");
}

SimplexPoint SimplexPoint::uniform(int size) {
  if (size < 1) throw ParameterError("SimplexPoint::uniform: size must be positive");
  return SimplexPoint(std::vector<double>(size, 1.0 / size));
}

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 1e-12) h -= x * std::log(x);
  return h;
}

namespace {
double squared_norm(std::span<const double> p) {
  return std::inner_product(p.begin(), p.end(), p.begin(), 0.0);
}

double overlap_log_argument(std::span<const double> rho, int k) {
  if (k < 1 || rho.size() != static_cast<std::size_t>(k) * k)
    throw ParameterError("f_overlap: rho must have k^2 entries");
  const double g = 1.0 - 2.0 / k + squared_norm(rho);
  if (!(g > 0.0)) throw DomainError("f_overlap: 1 - 2/k + |rho|^2 is not positive");
  return g;
}
}  // namespace

double phi(std::span<const double> alpha, double d) {
  if (alpha.empty()) throw ParameterError("phi: empty alpha");
  const double g = 1.0 - squared_norm(alpha);
  if (!(g > 0.0)) throw DomainError("phi: |alpha|^2 >= 1, log of a non-positive number");
  return entropy(alpha) + 0.5 * d * std::log(g);
}

double f_overlap(std::span<const double> rho, double d, int k) {
  const double g = overlap_log_argument(rho, k);
  return entropy(rho) + 0.5 * d * std::log(g);
}

Eigen::VectorXd f_gradient(std::span<const double> rho, double d, int k) {
  const double g = overlap_log_argument(rho, k);
  Eigen::VectorXd out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw DomainError("f_gradient: entries must be positive");
    out[i] = -std::log(rho[i]) - 1.0 + d * rho[i] / g;
  }
  return out;
}

Eigen::MatrixXd f_hessian(std::span<const double> rho, double d, int k) {
  const double g = overlap_log_argument(rho, k);
  const int dim = static_cast<int>(rho.size());
  Eigen::MatrixXd h(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (!(rho[a] > 0.0)) throw DomainError("f_hessian: entries must be positive");
    for (int b = 0; b < dim; ++b) h(a, b) = -2.0 * d * rho[a] * rho[b] / (g * g);
    h(a, a) += -1.0 / rho[a] + d / g;
  }
  return h;
}

Eigen::MatrixXd tangent_basis(int dim) {
  if (dim < 2) throw ParameterError("tangent_basis: dimension must be at least 2");
  Eigen::MatrixXd spanning = Eigen::MatrixXd::Zero(dim, dim - 1);
  for (int i = 0; i < dim - 1; ++i) {
    spanning(i, i) = 1.0;
    spanning(i + 1, i) = -1.0;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(spanning);
  return qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim - 1);
}

Eigen::MatrixXd balanced_tangent_basis(int k) {
  const Eigen::MatrixXd q = tangent_basis(k);
  Eigen::MatrixXd out(k * k, (k - 1) * (k - 1));
  for (int a = 0; a < k - 1; ++a)
    for (int b = 0; b < k - 1; ++b)
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out(i * k + j, a * (k - 1) + b) = q(i, a) * q(j, b);
  return out;
}

Eigen::MatrixXd tangent_hessian(std::span<const double> rho, double d, int k) {
  Eigen::MatrixXd q = tangent_basis(static_cast<int>(rho.size()));
  return q.transpose() * f_hessian(rho, d, k) * q;
}

namespace {

std::vector<double> shifted(std::span<const double> rho, const Eigen::VectorXd& dir, double h) {
  std::vector<double> out(rho.begin(), rho.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * dir[i];
  return out;
}

// Second differences of f along the tangent basis.
Eigen::MatrixXd fd_tangent_hessian(std::span<const double> rho, double d, int k, const Eigen::MatrixXd& q,
                                   double h) {
  const int t = static_cast<int>(q.cols());
  const double f0 = f_overlap(rho, d, k);
  Eigen::MatrixXd out(t, t);
  for (int a = 0; a < t; ++a) {
    Eigen::VectorXd qa = q.col(a);
    out(a, a) = (f_overlap(shifted(rho, qa, h), d, k) - 2 * f0 + f_overlap(shifted(rho, qa, -h), d, k)) / (h * h);
    for (int b = a + 1; b < t; ++b) {
      Eigen::VectorXd p = q.col(a) + q.col(b), m = q.col(a) - q.col(b);
      double v = (f_overlap(shifted(rho, p, h), d, k) - f_overlap(shifted(rho, m, h), d, k) -
                  f_overlap(shifted(rho, m, -h), d, k) + f_overlap(shifted(rho, p, -h), d, k)) /
                 (4 * h * h);
      out(a, b) = out(b, a) = v;
    }
  }
  return out;
}

}  // namespace

GradientCheck f_gradient_check(double d, int k, int points, double eta, Rng& rng, OverlapDomain domain) {
  if (k < 2) throw ParameterError("f_gradient_check: k must be at least 2");
  if (points < 0 || !(eta > 0.0) || !(eta < std::pow(static_cast<double>(k), -4)))
    throw ParameterError("f_gradient_check: need points >= 0 and 0 < eta < k^-4");
  const int dim = k * k;
  const Eigen::MatrixXd q = domain == OverlapDomain::simplex ? tangent_basis(dim) : balanced_tangent_basis(k);
  const int t = static_cast<int>(q.cols());
  const std::vector<double> bar(dim, 1.0 / dim);
  GradientCheck out;
  out.domain = domain;

  const double hg = 1e-6;
  Eigen::VectorXd fd(t);
  for (int a = 0; a < t; ++a) {
    Eigen::VectorXd qa = q.col(a);
    fd[a] = (f_overlap(shifted(bar, qa, hg), d, k) - f_overlap(shifted(bar, qa, -hg), d, k)) / (2 * hg);
  }
  out.fd_gradient_norm = fd.norm();
  out.analytic_gradient_norm = (q.transpose() * f_gradient(bar, d, k)).norm();

  std::normal_distribution<double> normal;
  out.max_top_eigenvalue = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < points; ++p) {
    std::vector<double> rho;
    double r = 0.0;
    do {
      Eigen::VectorXd z(t);
      for (int i = 0; i < t; ++i) z[i] = normal(rng);
      r = std::sqrt(eta) * std::pow(uniform01(rng), 1.0 / t);
      rho = shifted(bar, q * z.normalized(), r);
    } while (*std::min_element(rho.begin(), rho.end()) < 1e-12);

    // Analytic Hessian against central differences of the analytic gradient,
    // step relative to the entry so that small entries stay accurate.
    const Eigen::MatrixXd h = f_hessian(rho, d, k);
    double err = 0.0;
    for (int a = 0; a < dim; ++a) {
      const double hh = 1e-5 * rho[a];
      Eigen::VectorXd e = Eigen::VectorXd::Unit(dim, a);
      Eigen::VectorXd col = (f_gradient(shifted(rho, e, hh), d, k) - f_gradient(shifted(rho, e, -hh), d, k)) / (2 * hh);
      err = std::max(err, (col - h.col(a)).cwiseAbs().maxCoeff());
    }
    out.max_hessian_error = std::max(out.max_hessian_error, err / std::max(1.0, h.cwiseAbs().maxCoeff()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fd_tangent_hessian(rho, d, k, q, 1e-4),
                                                       Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    out.top_eigenvalues.push_back(top);
    out.radii.push_back(r);
    out.max_top_eigenvalue = std::max(out.max_top_eigenvalue, top);
  }
  if (points == 0) out.max_top_eigenvalue = 0.0;
  return out;
}

SeparationScan separation_scan(double d, int k, double eta, int resolution, const ScanVisitor& visit,
                               std::uint64_t budget) {
  if (k < 2) throw ParameterError("separation_scan: k must be at least 2");
  if (resolution < k || resolution % k != 0)
    throw ParameterError("separation_scan: resolution must be a positive multiple of k");
  if (!(eta >= 0.0)) throw ParameterError("separation_scan: eta must be non-negative");
  const int line = resolution / k;  // every row and column sums to line / resolution = 1/k
  const int dim = k * k;
  const double bar = 1.0 / dim;
  SeparationScan out;
  out.f_bar = 2 * std::log(static_cast<double>(k)) + d * std::log(1.0 - 1.0 / k);
  out.max_far = -std::numeric_limits<double>::infinity();

  std::vector<int> a(dim, 0), row(k, line), col(k, line);
  std::vector<double> rho(dim);
  std::uint64_t states = 0;
  auto evaluate = [&] {
    for (int i = 0; i < dim; ++i) rho[i] = static_cast<double>(a[i]) / resolution;
    const double f = f_overlap(rho, d, k);
    ++out.points;
    if (visit) visit(rho, f);
    double dist = 0.0;
    for (double x : rho) dist += (x - bar) * (x - bar);
    if (std::sqrt(dist) <= eta) return;
    ++out.far_points;
    if (f >= out.f_bar) ++out.violations;
    if (f > out.max_far) {
      out.max_far = f;
      out.argmax = rho;
    }
  };
  // Cells (i, j) with i, j < k-1 are free; the last column and last row follow.
  auto rec = [&](auto&& self, int i, int j) -> void {
    if (++states > budget) throw CapacityError("separation_scan: lattice exceeds the enumeration budget");
    if (i == k - 1) {
      for (int c = 0; c < k; ++c) a[i * k + c] = col[c];
      int last = std::accumulate(col.begin(), col.end(), 0);
      if (last == line) evaluate();
      return;
    }
    if (j == k - 1) {
      if (row[i] > col[j]) return;
      a[i * k + j] = row[i];
      col[j] -= row[i];
      self(self, i + 1, 0);
      col[j] += row[i];
      return;
    }
    const int hi = std::min(row[i], col[j]);
    for (int x = 0; x <= hi; ++x) {
      a[i * k + j] = x;
      row[i] -= x;
      col[j] -= x;
      self(self, i, j + 1);
      row[i] += x;
      col[j] += x;
    }
  };
  rec(rec, 0, 0);
  if (out.far_points == 0) throw ParameterError("separation_scan: no lattice point lies farther than eta");
  out.gap = out.f_bar - out.max_far;
  for (double x : out.argmax) out.argmax_stable_entries += 100.0 * k * x >= 51.0;
  return out;
}

double d_cond_asymptotic(int k) {
  if (k < 2) throw ParameterError("d_cond_asymptotic: k must be at least 2");
  return (2.0 * k - 1) * std::log(static_cast<double>(k)) - 2 * std::log(2.0);
}

double first_moment_estimate(int n, std::uint64_t m, int k) {
  if (n < 0 || k < 1) throw ParameterError("first_moment_estimate: need n >= 0 and k >= 1");
  if (k == 1) {
    if (m > 0) throw DomainError("first_moment_estimate: ln 0 for k = 1 with edges");
    return 0.0;
  }
  return n * std::log(static_cast<double>(k)) + static_cast<double>(m) * std::log(1.0 - 1.0 / k);
}

Rational expected_colorings(int n, std::uint64_t m, int k) {
  if (n < 0 || k < 1) throw ParameterError("expected_colorings: need n >= 0 and k >= 1");
  const std::uint64_t pairs = pair_count(n);
  if (m > pairs) throw ParameterError("expected_colorings: m exceeds C(n,2)");
  const BigInt all = binomial(BigInt(pairs), m);
  BigInt total = 0;
  // compositions of n into k class sizes, weighted by multinomial(n; sizes)
  std::vector<int> sizes(k, 0);
  auto rec = [&](auto&& self, int i, int left, BigInt ways, std::uint64_t mono) -> void {
    if (i == k - 1) {
      sizes[i] = left;
      mono += pair_count(left);
      total += ways * binomial(BigInt(pairs - mono), m);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      sizes[i] = c;
      self(self, i + 1, left - c, ways * binomial(BigInt(left), c), mono + pair_count(c));
    }
  };
  rec(rec, 0, n, BigInt(1), 0);
  return Rational(total, all);
}

Rational expected_colorings_exact(int n, std::uint64_t m, int k, std::uint64_t budget) {
  if (n < 0 || k < 1) throw ParameterError("expected_colorings_exact: need n >= 0 and k >= 1");
  const std::uint64_t pairs = pair_count(n);
  if (m > pairs) throw ParameterError("expected_colorings_exact: m exceeds C(n,2)");
  const BigInt graphs = binomial(BigInt(pairs), m);
  if (graphs > budget) throw CapacityError("expected_colorings_exact: too many graphs to enumerate");
  std::vector<int> pick(m);
  std::iota(pick.begin(), pick.end(), 0);
  BigInt total = 0;
  for (;;) {
    std::vector<Edge> e;
    for (int p : pick) e.push_back(pair_from_index(n, p));
    total += count_colorings(Graph(n, e), k, budget);
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && pick[i] == static_cast<int>(pairs - m) + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return Rational(total, graphs);
}

}  // namespace replab
