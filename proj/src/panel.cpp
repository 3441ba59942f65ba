#include "propoor/panel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

namespace {

void check_finite(const std::vector<double>& xs, const char* label) {
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (!std::isfinite(xs[j]))
      throw DataError(std::string(label) + ": non-finite income at index " + std::to_string(j));
  }
}

// 1-based ranks with ties resolved by original index (stable).
std::vector<std::size_t> stable_ranks(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&xs](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<std::size_t> rank(n);
  for (std::size_t pos = 0; pos < n; ++pos) rank[order[pos]] = pos + 1;
  return rank;
}

}  // namespace

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw DataError("empirical distribution needs at least one observation");
  check_finite(sorted_, "ecdf");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const noexcept {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0))
    throw ConfigError("quantile level must be in (0,1], got " + std::to_string(p));
  const std::size_t n = sorted_.size();
  const double dn = static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(p * dn));
  if (k < 1) k = 1;
  if (k > n) k = n;
  // Settle the float boundary cases: k must be the smallest index whose
  // ECDF value (computed with the same division as operator()) reaches p,
  // so that quantile(ecdf(x)) never overshoots a sample point.
  while (k > 1 && static_cast<double>(k - 1) / dn >= p) --k;
  while (k < n && static_cast<double>(k) / dn < p) ++k;
  return sorted_[k - 1];
}

IncomePanel IncomePanel::make(std::vector<double> x1, std::vector<double> x2) {
  if (x1.size() != x2.size())
    throw DataError("period lengths differ: " + std::to_string(x1.size()) + " vs " +
                    std::to_string(x2.size()));
  if (x1.size() < 2) throw DataError("panel needs at least 2 paired observations");
  check_finite(x1, "period 1");
  check_finite(x2, "period 2");
  return IncomePanel{std::move(x1), std::move(x2)};
}

PseudoObs pseudo_observations(const IncomePanel& panel) {
  const std::size_t n = panel.n();
  const double denom = static_cast<double>(n + 1);
  const auto r1 = stable_ranks(panel.x1);
  const auto r2 = stable_ranks(panel.x2);
  PseudoObs obs;
  obs.u.resize(n);
  obs.v.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    obs.u[j] = static_cast<double>(r1[j]) / denom;
    obs.v[j] = static_cast<double>(r2[j]) / denom;
  }
  return obs;
}

EmpiricalCopula::EmpiricalCopula(PseudoObs obs) : obs_(std::move(obs)) {
  if (obs_.u.size() != obs_.v.size())
    throw DataError("pseudo-observation coordinate lengths differ");
  if (obs_.n() == 0) throw DataError("empirical copula needs at least one pseudo-observation");
}

double EmpiricalCopula::operator()(double s, double t) const noexcept {
  const std::size_t n = obs_.n();
  std::size_t count = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (obs_.u[j] <= s && obs_.v[j] <= t) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

double EmpiricalCopula::integral(const std::function<double(double, double)>& f,
                                 double a, double b) const {
  const std::size_t n = obs_.n();
  KahanSum acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (obs_.u[j] < a && obs_.v[j] < b) {
      const double val = f(obs_.u[j], obs_.v[j]);
      if (!std::isfinite(val))
        throw NumericError("non-finite integrand at pseudo-observation index " + std::to_string(j));
      acc.add(val);
    }
  }
  return acc.value() / static_cast<double>(n);
}

std::vector<double> EmpiricalCopula::midpoint_grid(std::size_t m) const {
  const std::size_t n = obs_.n();
  const double md = static_cast<double>(m);
  auto cell = [m, md](double coord) {
    // Smallest node index i (0-based) whose node (i+0.5)/m >= coord, i.e.
    // the first grid threshold that counts this point; m means "never".
    double est = std::ceil(coord * md - 0.5);
    if (est < 0.0) est = 0.0;
    auto i = static_cast<std::size_t>(est);
    if (i > m) i = m;
    while (i > 0 && (static_cast<double>(i - 1) + 0.5) / md >= coord) --i;
    while (i < m && (static_cast<double>(i) + 0.5) / md < coord) ++i;
    return i;
  };
  std::vector<double> grid(m * m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t iu = cell(obs_.u[j]);
    const std::size_t iv = cell(obs_.v[j]);
    if (iu < m && iv < m) grid[iu * m + iv] += 1.0;
  }
  // 2D prefix sums turn bin counts into cumulative counts.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 1; b < m; ++b) grid[a * m + b] += grid[a * m + b - 1];
  for (std::size_t a = 1; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) grid[a * m + b] += grid[(a - 1) * m + b];
  // Divide (not multiply by reciprocal) so cells agree bitwise with the
  // direct count in operator().
  for (double& g : grid) g /= static_cast<double>(n);
  return grid;
}

}  // namespace propoor
