#include "propoor/joint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

ConfidenceInterval wald_ci(double estimate, double gamma, std::size_t n, double level) {
  if (!(level > 0.0 && level < 1.0))
    throw ConfigError("confidence level must be in (0,1), got " + std::to_string(level));
  if (n < 2) throw ConfigError("confidence interval needs n >= 2");
  if (gamma < 0.0)
    throw NumericError("negative variance " + std::to_string(gamma) + " passed to wald_ci");
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half = z * std::sqrt(gamma / static_cast<double>(n));
  return ConfidenceInterval{estimate - half, estimate + half};
}

CrossVariance gamma_cross_parts(const InequalitySpec& ineq, const PovertySpec& pov,
                                const IncomePanel& panel, double z1, double z2,
                                std::size_t m) {
  if (m < 16) throw ConfigError("quadrature grid must have at least 16 nodes");
  const Ecdf e1(panel.x1);
  const Ecdf e2(panel.x2);
  const PovertyKernel k1(pov, e1, z1, /*require_h1=*/true);
  const PovertyKernel k2(pov, e2, z2, /*require_h1=*/true);
  const PseudoObs obs = pseudo_observations(panel);
  const std::vector<double> d = inequality_influence_series(ineq, panel, obs);
  const std::vector<double> w = poverty_influence_series(k1, k2, obs);

  CrossVariance out;
  out.cross_moment = population_covariance(d, w);
  if (!pov.nu_vanishes()) out.coupling = nu_coupling(k1, k2, obs, d, m);
  out.total = out.cross_moment + out.coupling;
  return out;
}

double gamma_cross(const InequalitySpec& ineq, const PovertySpec& pov,
                   const IncomePanel& panel, double z1, double z2, std::size_t m) {
  return gamma_cross_parts(ineq, pov, panel, z1, z2, m).total;
}

double ratio_epsilon(double i1, double i2) {
  return 1e-9 * std::max({std::abs(i1), std::abs(i2), 1e-12});
}

std::string classify_variation(const JointReport& r) {
  if (r.ratio_degenerate) return "degenerate";
  const bool significant = !r.ci_ratio.contains(0.0);
  if (significant && r.delta_j <= 0.0 && r.delta_i <= 0.0) return "pro-poor";
  if (significant && r.delta_j >= 0.0 && r.delta_i >= 0.0) return "anti-poor";
  return "ambiguous";
}

JointReport assemble_joint(const InequalitySpec& ineq, const PovertySpec& pov,
                           const IncomePanel& panel, double z1, double z2,
                           double level, std::size_t m) {
  JointReport r;
  r.inequality_name = ineq.name;
  r.poverty_name = pov.name;
  r.n = panel.n();
  r.level = level;

  const InequalityEstimate i1 = inequality_eval(ineq, panel.x1, 1);
  const InequalityEstimate i2 = inequality_eval(ineq, panel.x2, 2);
  r.delta_i = i2.value - i1.value;
  r.delta_j = delta_poverty(pov, panel, z1, z2);
  r.gamma_i = gamma_inequality(ineq, panel);
  r.gamma_j = gamma_poverty(pov, panel, z1, z2, m);
  r.gamma_ij = gamma_cross(ineq, pov, panel, z1, z2, m);
  r.ci_delta_i = wald_ci(r.delta_i, r.gamma_i, r.n, level);
  r.ci_delta_j = wald_ci(r.delta_j, r.gamma_j.total, r.n, level);

  r.eps_ratio = ratio_epsilon(i1.value, i2.value);
  if (std::abs(r.delta_i) <= r.eps_ratio) {
    r.ratio_degenerate = true;
    r.classification = classify_variation(r);
    return r;
  }
  r.a = 1.0 / r.delta_i;
  r.b = r.delta_j / (r.delta_i * r.delta_i);
  r.ratio = r.delta_j / r.delta_i;
  // Stored exactly as the quadratic form so the delta-method identity is
  // recomputable bit-for-bit from the stored components.
  r.gamma_ratio = r.a * r.a * r.gamma_j.total + r.b * r.b * r.gamma_i -
                  2.0 * r.a * r.b * r.gamma_ij;
  if (r.gamma_ratio < 0.0) {
    // The form can only dip below zero through quadrature noise in
    // gamma_ij (the cross moment alone obeys Cauchy-Schwarz); reject
    // anything beyond that noise level.
    const double mag = r.a * r.a * r.gamma_j.total + r.b * r.b * r.gamma_i +
                       2.0 * std::abs(r.a * r.b * r.gamma_ij);
    if (r.gamma_ratio < -(1e-12 + 0.01 * mag))
      throw NumericError(ineq.name + "/" + pov.name +
                         ": negative delta-method variance " +
                         std::to_string(r.gamma_ratio));
  }
  r.ci_ratio = wald_ci(r.ratio, std::max(r.gamma_ratio, 0.0), r.n, level);
  r.classification = classify_variation(r);
  return r;
}

JointReport ratio_report(const InequalitySpec& ineq, const PovertySpec& pov,
                         const IncomePanel& panel, double z1, double z2,
                         double level, std::size_t m) {
  JointReport r = assemble_joint(ineq, pov, panel, z1, z2, level, m);
  if (r.ratio_degenerate) {
    char detail[128];
    std::snprintf(detail, sizeof detail, "|delta I| = %.6g is within eps = %.6g",
                  std::abs(r.delta_i), r.eps_ratio);
    throw DegenerateError(ineq.name + "/" + pov.name + ": degenerate ratio, " + detail +
                          "; delta J / delta I is not identified");
  }
  return r;
}

}  // namespace propoor
