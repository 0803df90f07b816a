#include "replab/stats.hpp"

#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "replab/errors.hpp"

namespace replab {

double chi_square_survival(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquare chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw ParameterError("chi_square_test: size mismatch");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  ChiSquare out;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) {
      if (observed[i] > 0) return {INFINITY, 0, 0.0};
      continue;
    }
    double e = total * expected[i];
    double diff = static_cast<double>(observed[i]) - e;
    out.statistic += diff * diff / e;
    ++cells;
  }
  out.dof = cells - 1;
  out.p_value = chi_square_survival(out.statistic, out.dof);
  return out;
}

double poisson_pmf(double mean, int count) {
  if (count < 0) return 0.0;
  if (mean == 0.0) return count == 0 ? 1.0 : 0.0;
  return std::exp(count * std::log(mean) - mean - std::lgamma(count + 1.0));
}

}  // namespace replab
