#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "propoor/panel.hpp"

namespace propoor {

using RealFn = std::function<double(double)>;

enum class InequalityFamily { ge, theil, mld, atkinson, champernowne, kolm };

// One member of the Theil-like inequality family
//   I = tau( B / h1(mu) - h2(mu) ),   B = (1/n) sum h(X_j),
// identified by the (tau, h, h1, h2) quadruple plus the analytic
// derivatives tau', h1', h2' that the variance formulas need.
struct InequalitySpec {
  InequalityFamily family = InequalityFamily::theil;
  double param = 0.0;  // alpha for GE/Atkinson/Kolm
  std::string name;
  RealFn tau;
  RealFn tau_prime;
  RealFn h;
  RealFn h1;
  RealFn h1_prime;
  RealFn h2;
  RealFn h2_prime;
  bool requires_positive = true;
  bool scale_invariant = true;
  bool translation_invariant = false;

  static InequalitySpec generalized_entropy(double alpha);  // alpha not in {0,1}
  static InequalitySpec theil();
  static InequalitySpec mld();
  static InequalitySpec atkinson(double alpha);  // alpha < 1, alpha != 0
  static InequalitySpec champernowne();
  static InequalitySpec kolm(double alpha);  // alpha > 0

  // Config tokens: GE:0.5, THEIL, MLD, ATK:0.5, CHAMP, KOLM:1
  // (NAME(param) accepted as well; case-insensitive).
  static InequalitySpec parse(const std::string& token);
};

struct InequalityEstimate {
  int period = 0;    // 1 or 2; 0 for a free-standing sample
  double value = 0;  // I_n
  double mu = 0;     // empirical mean
  double b = 0;      // (1/n) sum h(X_j)
  double k = 0;      // tau'(B/h1(mu) - h2(mu))
};

InequalityEstimate inequality_eval(const InequalitySpec& spec,
                                   std::span<const double> sample, int period = 0);

// Plug-in influence of one period's index at a point of the copula square:
//   K_i [ h(y)/h1(mu) - (B h1'(mu)/h1(mu)^2 + h2'(mu)) y ],
//   y = G_{i,n}^{-1}(u or v, by period).
class InequalityInfluence {
 public:
  InequalityInfluence(const InequalitySpec& spec, const InequalityEstimate& est,
                      const Ecdf& ecdf, int period);
  double operator()(double u, double v) const;

 private:
  const Ecdf* ecdf_;
  RealFn h_;
  double inv_h1mu_;
  double slope_;
  double k_;
  int period_;
};

double influence_inequality(const InequalitySpec& spec, const IncomePanel& panel,
                            int period, double u, double v);

// F*_I(u_j, v_j) = F*_{2,I} - F*_{1,I} at all n pseudo-observations.
std::vector<double> inequality_influence_series(const InequalitySpec& spec,
                                                const IncomePanel& panel,
                                                const PseudoObs& obs);

// I_n(2) - I_n(1).
double delta_inequality(const InequalitySpec& spec, const IncomePanel& panel);

// Asymptotic variance of sqrt(n)(delta I_n - delta I): the centered second
// moment of the influence difference under the empirical copula.
double gamma_inequality(const InequalitySpec& spec, const IncomePanel& panel);

}  // namespace propoor
