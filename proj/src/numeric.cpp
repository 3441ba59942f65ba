#include "propoor/numeric.hpp"

#include <boost/math/distributions/normal.hpp>

#include "propoor/errors.hpp"

namespace propoor {

double sum(std::span<const double> xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw NumericError("mean of an empty range");
  return sum(xs) / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
  const double m = mean(xs);
  KahanSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return s.value() / static_cast<double>(xs.size());
}

double population_covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw NumericError("covariance of ranges of unequal length");
  const double mx = mean(xs);
  const double my = mean(ys);
  KahanSum s;
  for (std::size_t j = 0; j < xs.size(); ++j) s.add((xs[j] - mx) * (ys[j] - my));
  return s.value() / static_cast<double>(xs.size());
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw NumericError("normal quantile needs p in (0,1)");
  static const boost::math::normal_distribution<double> unit(0.0, 1.0);
  return boost::math::quantile(unit, p);
}

double normal_cdf(double x) {
  static const boost::math::normal_distribution<double> unit(0.0, 1.0);
  return boost::math::cdf(unit, x);
}

}  // namespace propoor
