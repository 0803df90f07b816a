#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace replab {

// Streaming mean and standard error (Welford).
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double std_error() const { return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct ChiSquare {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson test of `observed` against cell probabilities `expected` (summing to 1).
// Cells with zero expected mass must have zero observations, otherwise p = 0.
ChiSquare chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> expected);

double chi_square_survival(double statistic, int dof);
double poisson_pmf(double mean, int count);

}  // namespace replab
