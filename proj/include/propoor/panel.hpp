#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace propoor {

// Step empirical distribution function of one period's incomes.
// Right-continuous: operator() counts <=, quantile is the left-continuous
// generalized inverse, so quantile(k/n) lands exactly on order statistics.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> values);

  // G_n(x) = #{j : X_j <= x} / n
  double operator()(double x) const noexcept;

  // inf{x : G_n(x) >= p} = the ceil(n*p)-th order statistic, p in (0,1].
  double quantile(double p) const;

  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Matched income pairs (x1_j, x2_j) for the two periods.
struct IncomePanel {
  std::vector<double> x1;
  std::vector<double> x2;

  std::size_t n() const noexcept { return x1.size(); }

  // Validates pairing: equal lengths, n >= 2, all values finite.
  static IncomePanel make(std::vector<double> x1, std::vector<double> x2);
};

// Ranks scaled into (0,1): u_j = rank(x1_j)/(n+1), v_j likewise for x2.
// Ties are broken by original index (stable), so output is deterministic.
struct PseudoObs {
  std::vector<double> u;
  std::vector<double> v;

  std::size_t n() const noexcept { return u.size(); }
};

PseudoObs pseudo_observations(const IncomePanel& panel);

// Rank-based estimate of the dependence between the two periods.
class EmpiricalCopula {
 public:
  explicit EmpiricalCopula(PseudoObs obs);

  // C_n(s,t) = (1/n) #{j : u_j <= s and v_j <= t}
  double operator()(double s, double t) const noexcept;

  // Plug-in integral of f against dC_n over the open rectangle (0,a)x(0,b):
  // (1/n) sum f(u_j, v_j) 1{u_j < a, v_j < b}.  Throws if f is non-finite at
  // some pseudo-observation, naming the offending index.
  double integral(const std::function<double(double, double)>& f,
                  double a = 1.0, double b = 1.0) const;

  // C_n evaluated on the m x m midpoint grid: entry [a*m + b] is
  // C_n((a+0.5)/m, (b+0.5)/m) with the first index thresholding u and the
  // second thresholding v.  Built with one pass over the data (binned counts
  // plus 2D prefix sums) so quadrature loops stay O(n + m^2).
  std::vector<double> midpoint_grid(std::size_t m) const;

  const PseudoObs& obs() const noexcept { return obs_; }
  std::size_t n() const noexcept { return obs_.n(); }

 private:
  PseudoObs obs_;
};

}  // namespace propoor
