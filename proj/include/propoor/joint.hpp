#pragma once

#include <cstddef>
#include <string>

#include "propoor/inequality.hpp"
#include "propoor/poverty.hpp"

namespace propoor {

struct ConfidenceInterval {
  double lo = 0;
  double hi = 0;
  double width() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// estimate -+ z * sqrt(gamma/n), z the standard-normal quantile of
// (1+level)/2.
ConfidenceInterval wald_ci(double estimate, double gamma, std::size_t n, double level);

struct CrossVariance {
  double cross_moment = 0;  // centered cross moment of F*_I and F*_J under C_n
  double coupling = 0;      // nu-weighted single-integral terms (0 when nu == 0)
  double total = 0;
};

CrossVariance gamma_cross_parts(const InequalitySpec& ineq, const PovertySpec& pov,
                                const IncomePanel& panel, double z1, double z2,
                                std::size_t m = 256);

double gamma_cross(const InequalitySpec& ineq, const PovertySpec& pov,
                   const IncomePanel& panel, double z1, double z2,
                   std::size_t m = 256);

// Full ratio inference block for one (inequality, poverty) pair.
struct JointReport {
  std::string inequality_name;
  std::string poverty_name;
  std::size_t n = 0;
  double level = 0.95;
  std::string method = "wald";

  double delta_i = 0;
  double delta_j = 0;
  double gamma_i = 0;
  PovertyVariance gamma_j;
  double gamma_ij = 0;
  ConfidenceInterval ci_delta_i;
  ConfidenceInterval ci_delta_j;

  // Ratio block; meaningless when degenerate (|delta_i| <= eps_ratio).
  bool ratio_degenerate = false;
  double eps_ratio = 0;
  double ratio = 0;
  double a = 0;  // 1/delta_i
  double b = 0;  // delta_j/delta_i^2
  double gamma_ratio = 0;
  ConfidenceInterval ci_ratio;

  // pro-poor | anti-poor | ambiguous | degenerate, from the signs of the
  // variations and whether the ratio CI excludes 0.
  std::string classification = "ambiguous";
};

double ratio_epsilon(double i1, double i2);

// Classification from the signs of the variations plus whether the ratio
// CI excludes 0; reusable after a report's intervals are replaced (e.g. by
// bootstrap percentile intervals).
std::string classify_variation(const JointReport& report);

// Non-throwing assembly: a vanishing delta_i flags the ratio block as
// degenerate instead of failing, so pipelines can render a labeled row.
JointReport assemble_joint(const InequalitySpec& ineq, const PovertySpec& pov,
                           const IncomePanel& panel, double z1, double z2,
                           double level = 0.95, std::size_t m = 256);

// Contract form: throws when the ratio is degenerate.
JointReport ratio_report(const InequalitySpec& ineq, const PovertySpec& pov,
                         const IncomePanel& panel, double z1, double z2,
                         double level = 0.95, std::size_t m = 256);

}  // namespace propoor
