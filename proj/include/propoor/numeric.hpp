#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace propoor {

// Kahan-Babuska compensated accumulator.  All the moment sums in this
// library run through one of these so results do not drift with input
// order beyond ~1 ulp of the total.
class KahanSum {
 public:
  void add(double x) noexcept {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double sum(std::span<const double> xs);
double mean(std::span<const double> xs);

// Central second moment with 1/n normalisation (not 1/(n-1)); this is the
// plug-in variance that the asymptotic formulas call for.
double population_variance(std::span<const double> xs);
double population_covariance(std::span<const double> xs, std::span<const double> ys);

// Standard normal quantile, Phi^{-1}(p) for p in (0,1).
double normal_quantile(double p);
double normal_cdf(double x);

}  // namespace propoor
