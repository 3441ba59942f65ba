#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "propoor/inequality.hpp"
#include "propoor/joint.hpp"
#include "propoor/panel.hpp"
#include "propoor/poverty.hpp"

namespace propoor {

// Synthetic-data engine used to validate the analytic variance estimators:
// sample panels with a known dependence structure, bootstrap the variations,
// and measure CI coverage against known (or pseudo-) truth.

enum class CopulaKind { independence, clayton, comonotone };

enum class MarginalKind { lognormal, exponential, pareto };

struct Marginal {
  MarginalKind kind = MarginalKind::lognormal;
  double a = 0.0;  // meanlog | rate | scale x_m
  double b = 1.0;  // sdlog   | unused | shape

  double quantile(double p) const;
  double cdf(double x) const;
  double median() const { return quantile(0.5); }
  std::string describe() const;

  static Marginal lognormal(double meanlog, double sdlog);
  static Marginal exponential(double rate);
  static Marginal pareto(double xm, double shape);
  // lognormal:0:1 | exponential:1 | pareto:1:3
  static Marginal parse(const std::string& token);

  bool operator==(const Marginal&) const = default;
};

// Poverty-line policy shared by the CLI and the experiments: either fixed
// per-period lines or a fraction of the (sample or marginal) median.
struct ZPolicy {
  bool median_fraction = true;
  double fraction = 0.5;
  double z1 = 0;
  double z2 = 0;

  std::pair<double, double> resolve(const IncomePanel& panel) const;
  std::pair<double, double> resolve(const Marginal& m1, const Marginal& m2) const;
};

struct McConfig {
  CopulaKind copula = CopulaKind::independence;
  double theta = 2.0;  // Clayton dependence parameter
  Marginal marginal1;
  Marginal marginal2;
  std::size_t n = 1000;
  std::size_t replicates = 100;
  std::uint64_t seed = 12345;
  double level = 0.95;
  std::size_t grid = 256;
  std::size_t bootstrap = 0;  // resamples for the variance-ratio column; 0 = off
  std::vector<InequalitySpec> inequality;
  std::vector<PovertySpec> poverty;
  ZPolicy z;

  void validate() const;
};

// Deterministic given (seed, replicate): per-replicate engine seeded with
// seed XOR replicate, uniforms pushed through the copula conditional and
// the marginal quantile functions.
IncomePanel sample_panel(const McConfig& cfg, std::size_t replicate);

// Closed-form index values where known; nullopt otherwise.
std::optional<double> true_inequality(const InequalitySpec& spec, const Marginal& m);
std::optional<double> true_poverty(const PovertySpec& spec, const Marginal& m, double z);

// Large-n plug-in stand-in for missing closed forms: one deterministic
// evaluation on the n-point marginal quantile grid (default 10^6), cached.
double pseudo_true_inequality(const InequalitySpec& spec, const Marginal& m,
                              std::size_t n = 1000000);
double pseudo_true_poverty(const PovertySpec& spec, const Marginal& m, double z,
                           std::size_t n = 1000000);

// Pair-resampling bootstrap: resamples index pairs with replacement
// (keeping the dependence structure), recomputes `estimator`, and returns
// n * (sample variance across resamples) -- directly comparable to Gamma.
// Throws when >= 10% of resamples leave the estimator degenerate.
double bootstrap_variance(const IncomePanel& panel,
                          const std::function<double(const IncomePanel&)>& estimator,
                          std::size_t resamples, std::uint64_t seed);

struct CoverageResult {
  std::string measure;
  std::string kind;          // "inequality" | "poverty"
  std::string truth_source;  // closed-form | identical-marginals | pseudo-truth(n=...)
  double true_delta = 0;
  double coverage = 0;      // fraction of usable replicates whose CI covers truth
  double mean_ci_width = 0;
  double boot_analytic_ratio = 0;  // n*bootVar/Gamma on replicate 0; NaN if off
  std::size_t replicates = 0;      // usable replicates
  std::size_t failures = 0;        // replicates skipped as degenerate
};

std::vector<CoverageResult> coverage_experiment(const McConfig& cfg);

}  // namespace propoor
