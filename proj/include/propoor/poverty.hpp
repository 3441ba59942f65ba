#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "propoor/panel.hpp"

namespace propoor {

enum class PovertyFamily { fgt, sen, kakwani, shorrocks, custom };

// One member of the poverty-index family, identified by its g and nu
// kernels.  g feeds the index and the influence terms; nu drives the
// rank-correction integrals of the variance (identically zero for FGT).
struct PovertySpec {
  PovertyFamily family = PovertyFamily::fgt;
  double alpha = 0.0;  // FGT exponent, alpha >= 0
  int k = 1;           // Kakwani order, k >= 1
  std::string name;

  // Extension point: caller-supplied kernels bound lazily to a period's
  // ECDF and line.  The H1 data check still runs; all other regularity
  // hypotheses are the caller's responsibility (documented in README).
  using CustomG = std::function<double(const Ecdf&, double z, double x)>;
  using CustomNu = std::function<double(const Ecdf&, double z, double s)>;
  CustomG custom_g;
  CustomNu custom_nu;  // empty => treated as nu == 0

  bool nu_vanishes() const noexcept {
    return family == PovertyFamily::fgt ||
           (family == PovertyFamily::custom && !custom_nu);
  }

  static PovertySpec fgt(double alpha);
  static PovertySpec sen();
  static PovertySpec kakwani(int k);
  static PovertySpec shorrocks();
  static PovertySpec custom(std::string name, CustomG g, CustomNu nu = {});

  // Config tokens: FGT:0, FGT:1, SEN, KAK:2, SHOR (THON accepted as an
  // alias of SHOR); case-insensitive, NAME(param) accepted.
  static PovertySpec parse(const std::string& token);
};

// g and nu of one family bound to one period's empirical distribution and
// poverty line, with the J/K constants frozen at their plug-in values.
class PovertyKernel {
 public:
  // require_h1 adds the "some poor, some non-poor" data check even for
  // families whose point estimate tolerates the boundary (FGT, Shorrocks);
  // Sen/Kakwani constants always require it.  Variance paths pass true.
  PovertyKernel(const PovertySpec& spec, const Ecdf& ecdf, double z,
                bool require_h1 = false);

  double g(double x) const;
  double nu(double s) const;

  double j_const() const noexcept { return j_const_; }
  double k_const() const noexcept { return k_const_; }
  double headcount() const noexcept { return headcount_; }
  double z() const noexcept { return z_; }
  const PovertySpec& spec() const noexcept { return spec_; }
  const Ecdf& ecdf() const noexcept { return *ecdf_; }

 private:
  PovertySpec spec_;
  const Ecdf* ecdf_;
  double z_ = 0;
  double headcount_ = 0;  // G_n(Z)
  double j_const_ = 0;
  double k_const_ = 0;
};

struct PovertyEstimate {
  int period = 0;
  double value = 0;      // J_n
  double headcount = 0;  // G_n(Z)
  double j_const = 0;
  double k_const = 0;
  double z = 0;
};

PovertyEstimate poverty_eval(const PovertySpec& spec, std::span<const double> sample,
                             double z, int period = 0);

// (J-const, K-const) for the given period sample and line.
std::pair<double, double> kernel_constants(const PovertySpec& spec,
                                           std::span<const double> sample, double z);

// J_n(2) - J_n(1).
double delta_poverty(const PovertySpec& spec, const IncomePanel& panel,
                     double z1, double z2);

// F*_J(u_j, v_j) = g_2(G_{2,n}^{-1}(v_j)) - g_1(G_{1,n}^{-1}(u_j)).
std::vector<double> poverty_influence_series(const PovertyKernel& k1,
                                             const PovertyKernel& k2,
                                             const PseudoObs& obs);

struct PovertyVariance {
  double gamma1 = 0;  // centered second moment of the influence difference
  double g1 = 0;      // nu2 x nu2 Brownian-bridge double integral
  double g2 = 0;      // nu2 x nu1 cross term against C_n(t,s) - t s
  double g3 = 0;      // nu1 x nu1 Brownian-bridge double integral
  double gamma3 = 0;  // influence/nu coupling single integrals
  double total = 0;   // gamma1 + (g1 - 2 g2 + g3) + 2 gamma3
};

PovertyVariance gamma_poverty(const PovertySpec& spec, const IncomePanel& panel,
                              double z1, double z2, std::size_t m = 256);

// Shared coupling term of the poverty and cross variances:
//   (1/m) sum_i [ nu2(s_i) T_v(s_i) - nu1(s_i) T_u(s_i) ]
//     - mean(values) * (1/m) sum_i s_i (nu2(s_i) - nu1(s_i)),
// where T_v(s) = (1/n) sum_j values_j 1{v_j < s} and T_u likewise with u.
double nu_coupling(const PovertyKernel& k1, const PovertyKernel& k2,
                   const PseudoObs& obs, std::span<const double> values,
                   std::size_t m);

}  // namespace propoor
