#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "replab/coloring.hpp"
#include "replab/rng.hpp"

namespace replab {

// Probability vector; alpha has k entries, rho k^2 (row-major).
struct SimplexPoint {
  std::vector<double> values;

  SimplexPoint() = default;
  explicit SimplexPoint(std::vector<double> v);  // ParameterError unless >= 0 and sum within 1e-12 of 1
  static SimplexPoint uniform(int size);
  std::size_t size() const { return values.size(); }
};

double entropy(std::span<const double> p);  // 0 ln 0 = 0
// H(alpha) + (d/2) ln(1 - |alpha|^2); k = alpha.size().
double phi(std::span<const double> alpha, double d);
// H(rho) + (d/2) ln(1 - 2/k + |rho|^2).
double f_overlap(std::span<const double> rho, double d, int k);

// Ambient partial derivatives of f (all k^2 coordinates free).
Eigen::VectorXd f_gradient(std::span<const double> rho, double d, int k);
Eigen::MatrixXd f_hessian(std::span<const double> rho, double d, int k);

// Orthonormal basis (columns) of {x in R^dim : sum x = 0}.
Eigen::MatrixXd tangent_basis(int dim);
// Orthonormal basis of k x k matrices (row-major) with zero row and column sums.
Eigen::MatrixXd balanced_tangent_basis(int k);
// Q^T H Q for the tangent basis Q.
Eigen::MatrixXd tangent_hessian(std::span<const double> rho, double d, int k);

// simplex: rho anywhere on the simplex, tangent = zero-sum directions.
// balanced: row and column sums fixed at 1/k (the marginal constraint of the
// overlap region with vanishing tolerance), tangent = doubly centered matrices.
enum class OverlapDomain { simplex, balanced };

struct GradientCheck {
  OverlapDomain domain = OverlapDomain::simplex;
  double fd_gradient_norm = 0.0;        // tangent gradient at rho-bar, central differences of f
  double analytic_gradient_norm = 0.0;  // same from the analytic gradient
  double max_hessian_error = 0.0;       // analytic vs differenced analytic gradient, relative, over the sample
  double max_top_eigenvalue = 0.0;      // largest tangent eigenvalue of the finite-difference Hessian
  std::vector<double> top_eigenvalues;  // per sampled point
  std::vector<double> radii;            // |rho - rho-bar| per sampled point
};

// Stationarity at rho-bar and curvature on `points` uniform draws from the
// ball of radius sqrt(eta) around rho-bar inside the domain. Requires eta < k^-4.
GradientCheck f_gradient_check(double d, int k, int points, double eta, Rng& rng,
                               OverlapDomain domain = OverlapDomain::simplex);

struct SeparationScan {
  double f_bar = 0.0;
  double max_far = 0.0;     // max f over lattice points with |rho - rho-bar| > eta
  double gap = 0.0;         // f_bar - max_far
  std::vector<double> argmax;
  int argmax_stable_entries = 0;  // entries with k rho_ij >= 0.51 at the argmax
  std::uint64_t points = 0;
  std::uint64_t far_points = 0;
  std::uint64_t violations = 0;  // far points with f >= f_bar
  bool violated() const { return gap <= 0.0; }
};

// Lattice of k x k matrices with entries a_ij / resolution and all row and
// column sums exactly 1/k (resolution must be a multiple of k). The visitor
// sees every lattice point with its f value.
using ScanVisitor = std::function<void(std::span<const double> rho, double f)>;
SeparationScan separation_scan(double d, int k, double eta, int resolution, const ScanVisitor& visit = {},
                               std::uint64_t budget = default_budget());

double d_cond_asymptotic(int k);  // (2k-1) ln k - 2 ln 2
double first_moment_estimate(int n, std::uint64_t m, int k);  // n ln k + m ln(1 - 1/k)
// E[Z_k(G(n,m))] = sum over maps of P[sigma proper], grouped by class sizes.
Rational expected_colorings(int n, std::uint64_t m, int k);
// Same expectation averaged over every graph with m edges (tiny n only).
Rational expected_colorings_exact(int n, std::uint64_t m, int k, std::uint64_t budget = default_budget());

}  // namespace replab
