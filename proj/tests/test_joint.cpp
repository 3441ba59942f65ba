#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "propoor/errors.hpp"
#include "propoor/joint.hpp"
#include "propoor/numeric.hpp"

using namespace propoor;

namespace {

IncomePanel p12() {
  return IncomePanel::make({3.1, 1.2, 4.5, 2.2, 5.9, 0.8, 2.2, 7.4, 1.9, 3.3, 6.1, 2.7},
                           {2.9, 1.6, 5.2, 1.9, 6.4, 1.1, 2.5, 8.1, 1.4, 4.0, 5.5, 3.6});
}

bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max({std::abs(want), std::abs(got), 1e-300});
}

IncomePanel random_panel(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x1(n), x2(n);
  for (std::size_t j = 0; j < n; ++j) {
    x1[j] = dist(rng);
    x2[j] = 0.6 * x1[j] + 0.4 * dist(rng);  // some dependence
  }
  return IncomePanel::make(std::move(x1), std::move(x2));
}

}  // namespace

TEST_CASE("symmetric normal-quantile interval") {
  SUBCASE("unit standard error at 95%") {
    const ConfidenceInterval ci = wald_ci(0.0, 4.0, 4, 0.95);  // sqrt(gamma/n) = 1
    CHECK(close_rel(ci.hi, 1.9599639845400554, 1e-12));
    CHECK_EQ(ci.lo, -ci.hi);
  }
  SUBCASE("worked example") {
    const ConfidenceInterval ci = wald_ci(-0.04, 0.0177, 696, 0.95);
    CHECK(close_rel(ci.lo, -0.04988394009154091, 1e-13));
    CHECK(close_rel(ci.hi, -0.030116059908459093, 1e-13));
    // Displayed with conservative (outward) rounding these are
    // (-0.04989, -0.03011).
    CHECK_LE(std::abs(ci.lo - -0.04989), 2e-5);
    CHECK_LE(std::abs(ci.hi - -0.03011), 2e-5);
  }
  SUBCASE("zero variance collapses to a point") {
    const ConfidenceInterval ci = wald_ci(0.7, 0.0, 50, 0.95);
    CHECK_EQ(ci.lo, 0.7);
    CHECK_EQ(ci.hi, 0.7);
  }
  SUBCASE("wider levels give wider intervals") {
    const double w90 = wald_ci(0.1, 0.5, 100, 0.90).width();
    const double w95 = wald_ci(0.1, 0.5, 100, 0.95).width();
    const double w99 = wald_ci(0.1, 0.5, 100, 0.99).width();
    CHECK_LT(w90, w95);
    CHECK_LT(w95, w99);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS((void)wald_ci(0.0, 1.0, 100, 0.0), ConfigError);
    CHECK_THROWS_AS((void)wald_ci(0.0, 1.0, 100, 1.0), ConfigError);
    CHECK_THROWS_AS((void)wald_ci(0.0, -0.5, 100, 0.95), NumericError);
  }
}

TEST_CASE("cross-variance anchors on the 12-pair panel") {
  const IncomePanel panel = p12();
  const double z1 = 2.5, z2 = 2.8;
  CHECK(close_rel(gamma_cross(InequalitySpec::theil(), PovertySpec::sen(), panel, z1, z2),
                  0.00868145381438577, 1e-10));
  CHECK(close_rel(
      gamma_cross(InequalitySpec::theil(), PovertySpec::fgt(1.0), panel, z1, z2),
      0.006361242954134489, 1e-10));
  CHECK(close_rel(gamma_cross(InequalitySpec::mld(), PovertySpec::fgt(1.0), panel, z1, z2),
                  0.0082380798258592, 1e-10));
  // The rank-correction coupling is identically zero for gap-power kernels.
  const CrossVariance parts =
      gamma_cross_parts(InequalitySpec::theil(), PovertySpec::fgt(1.0), panel, z1, z2);
  CHECK_EQ(parts.coupling, 0.0);
  CHECK_EQ(parts.total, parts.cross_moment);
}

TEST_CASE("ratio block anchors on the 12-pair panel") {
  const JointReport r = ratio_report(InequalitySpec::theil(), PovertySpec::sen(), p12(),
                                     2.5, 2.8, 0.95, 256);
  CHECK_EQ(r.inequality_name, "THEIL");
  CHECK_EQ(r.poverty_name, "SEN");
  CHECK_EQ(r.n, 12);
  CHECK_FALSE(r.ratio_degenerate);
  CHECK(close_rel(r.ratio, -2.1987391606948172, 1e-10));
  CHECK(close_rel(r.a, -290.3995117898819, 1e-10));
  CHECK(close_rel(r.b, 638.5127788190697, 1e-10));
  CHECK(close_rel(r.gamma_ratio, 18833.827424608673, 1e-9));
  CHECK(close_rel(r.ci_ratio.lo, -79.84611113151234, 1e-9));
  CHECK(close_rel(r.ci_ratio.hi, 75.44863281012272, 1e-9));
  CHECK(r.ci_delta_i.contains(r.delta_i));
  CHECK(r.ci_delta_j.contains(r.delta_j));
  CHECK(r.ci_ratio.contains(r.ratio));
}

TEST_CASE("delta-method identity recomputes from the reported pieces") {
  const std::vector<std::pair<InequalitySpec, PovertySpec>> pairs = {
      {InequalitySpec::theil(), PovertySpec::sen()},
      {InequalitySpec::mld(), PovertySpec::fgt(1.0)},
      {InequalitySpec::generalized_entropy(0.5), PovertySpec::kakwani(2)},
      {InequalitySpec::kolm(1.0), PovertySpec::shorrocks()},
  };
  for (int trial = 0; trial < 6; ++trial) {
    const IncomePanel panel = random_panel(60 + 13 * trial, 500 + trial);
    for (const auto& [ineq, pov] : pairs) {
      const JointReport r = assemble_joint(ineq, pov, panel, 0.9, 0.9);
      REQUIRE_FALSE(r.ratio_degenerate);
      const double recomputed = r.a * r.a * r.gamma_j.total + r.b * r.b * r.gamma_i -
                                2.0 * r.a * r.b * r.gamma_ij;
      CHECK_LE(std::abs(recomputed - r.gamma_ratio),
               1e-12 * std::max(1.0, std::abs(r.gamma_ratio)));
      CHECK(close_rel(r.a, 1.0 / r.delta_i, 1e-15));
      CHECK(close_rel(r.b, r.delta_j / (r.delta_i * r.delta_i), 1e-15));
    }
  }
}

TEST_CASE("cross-variance obeys a Cauchy-Schwarz bound for its moment part") {
  for (int trial = 0; trial < 8; ++trial) {
    const IncomePanel panel = random_panel(40 + 11 * trial, 900 + trial);
    const InequalitySpec ineq = InequalitySpec::theil();
    const PovertySpec pov = PovertySpec::fgt(1.0);
    const CrossVariance parts = gamma_cross_parts(ineq, pov, panel, 0.8, 0.8);
    const double gi = gamma_inequality(ineq, panel);
    const double g1 = gamma_poverty(pov, panel, 0.8, 0.8).gamma1;
    CHECK_LE(std::abs(parts.cross_moment), std::sqrt(g1 * gi) + 1e-12);
  }
}

TEST_CASE("independent coordinates decorrelate coupled transforms") {
  // Under independent sampling the centered cross moment of phi(u_j) and
  // psi(v_j) is O(1/sqrt(n)); bound it by four standard errors.
  const std::size_t n = 40000;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> phi(n), psi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = unif(rng), v = unif(rng);
    phi[j] = u * u;
    psi[j] = std::exp(v);
  }
  const double cov = population_covariance(phi, psi);
  const double bound = 4.0 * std::sqrt(population_variance(phi)) *
                       std::sqrt(population_variance(psi)) / std::sqrt(double(n));
  CHECK_LE(std::abs(cov), bound);
}

TEST_CASE("vanishing inequality variation degenerates the ratio") {
  std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  const IncomePanel identical = IncomePanel::make(x, x);

  CHECK_THROWS_WITH_AS(
      (void)ratio_report(InequalitySpec::theil(), PovertySpec::fgt(1.0), identical, 2.0,
                         2.0),
      doctest::Contains("not identified"), DegenerateError);

  const JointReport r =
      assemble_joint(InequalitySpec::theil(), PovertySpec::fgt(1.0), identical, 2.0, 2.0);
  CHECK(r.ratio_degenerate);
  CHECK_EQ(r.classification, "degenerate");
  CHECK_EQ(r.delta_i, 0.0);
  CHECK_EQ(r.delta_j, 0.0);
  CHECK_GT(r.eps_ratio, 0.0);
  // The per-measure blocks are still reported.
  CHECK(r.ci_delta_i.contains(0.0));
  CHECK(r.ci_delta_j.contains(0.0));
}

TEST_CASE("ratio tolerance scales with the index magnitudes") {
  CHECK_EQ(ratio_epsilon(0.0, 0.0), 1e-9 * 1e-12);
  CHECK_EQ(ratio_epsilon(2.0, -3.0), 1e-9 * 3.0);
  CHECK_EQ(ratio_epsilon(-5.0, 1.0), 1e-9 * 5.0);
}

TEST_CASE("variation classification") {
  JointReport r;
  r.ratio_degenerate = false;
  r.delta_i = -0.02;
  r.delta_j = -0.05;
  r.ci_ratio = {0.5, 3.0};
  CHECK_EQ(classify_variation(r), "pro-poor");
  r.delta_i = 0.02;
  r.delta_j = 0.05;
  CHECK_EQ(classify_variation(r), "anti-poor");
  r.delta_j = -0.05;  // mixed signs
  CHECK_EQ(classify_variation(r), "ambiguous");
  r.delta_j = 0.05;
  r.ci_ratio = {-0.5, 3.0};  // interval straddles zero
  CHECK_EQ(classify_variation(r), "ambiguous");
  r.ratio_degenerate = true;
  CHECK_EQ(classify_variation(r), "degenerate");
}
