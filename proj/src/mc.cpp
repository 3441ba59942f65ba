#include "propoor/mc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include <boost/math/distributions/exponential.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/pareto.hpp>

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

namespace {

// 53-bit uniform strictly inside (0,1); portable across standard libraries,
// unlike std::uniform_real_distribution.
double unif01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased bounded index via 128-bit multiply (Lemire).
std::size_t bounded_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

std::string fmt_params(const char* stem, double a, double b, bool two) {
  char buf[80];
  if (two)
    std::snprintf(buf, sizeof buf, "%s(%g,%g)", stem, a, b);
  else
    std::snprintf(buf, sizeof buf, "%s(%g)", stem, a);
  return buf;
}

}  // namespace

Marginal Marginal::lognormal(double meanlog, double sdlog) {
  if (!(sdlog > 0.0)) throw ConfigError("lognormal needs sdlog > 0");
  return Marginal{MarginalKind::lognormal, meanlog, sdlog};
}

Marginal Marginal::exponential(double rate) {
  if (!(rate > 0.0)) throw ConfigError("exponential needs rate > 0");
  return Marginal{MarginalKind::exponential, rate, 0.0};
}

Marginal Marginal::pareto(double xm, double shape) {
  if (!(xm > 0.0) || !(shape > 0.0)) throw ConfigError("pareto needs xm > 0 and shape > 0");
  return Marginal{MarginalKind::pareto, xm, shape};
}

Marginal Marginal::parse(const std::string& token) {
  std::string t;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = t.find(':', start);
    parts.push_back(t.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  auto num = [&](std::size_t i) {
    if (i >= parts.size())
      throw ConfigError("marginal '" + token + "' is missing a parameter");
    try {
      std::size_t used = 0;
      const double val = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
      return val;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse parameter '" + parts[i] + "' in marginal '" +
                        token + "'");
    }
  };
  if (parts[0] == "lognormal") return lognormal(num(1), num(2));
  if (parts[0] == "exponential") return exponential(num(1));
  if (parts[0] == "pareto") return pareto(num(1), num(2));
  throw ConfigError("unknown marginal '" + token +
                    "' (expected lognormal:mu:sigma, exponential:rate, pareto:xm:shape)");
}

double Marginal::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw NumericError("marginal quantile needs p in (0,1)");
  switch (kind) {
    case MarginalKind::lognormal:
      return boost::math::quantile(boost::math::lognormal_distribution<double>(a, b), p);
    case MarginalKind::exponential:
      return boost::math::quantile(boost::math::exponential_distribution<double>(a), p);
    case MarginalKind::pareto:
      return boost::math::quantile(boost::math::pareto_distribution<double>(a, b), p);
  }
  return 0.0;
}

double Marginal::cdf(double x) const {
  switch (kind) {
    case MarginalKind::lognormal:
      if (x <= 0.0) return 0.0;
      return boost::math::cdf(boost::math::lognormal_distribution<double>(a, b), x);
    case MarginalKind::exponential:
      if (x <= 0.0) return 0.0;
      return boost::math::cdf(boost::math::exponential_distribution<double>(a), x);
    case MarginalKind::pareto:
      if (x <= a) return 0.0;
      return boost::math::cdf(boost::math::pareto_distribution<double>(a, b), x);
  }
  return 0.0;
}

std::string Marginal::describe() const {
  switch (kind) {
    case MarginalKind::lognormal:
      return fmt_params("lognormal", a, b, true);
    case MarginalKind::exponential:
      return fmt_params("exponential", a, 0.0, false);
    case MarginalKind::pareto:
      return fmt_params("pareto", a, b, true);
  }
  return "?";
}

std::pair<double, double> ZPolicy::resolve(const IncomePanel& panel) const {
  if (!median_fraction) return {z1, z2};
  const Ecdf e1(panel.x1);
  const Ecdf e2(panel.x2);
  return {fraction * e1.quantile(0.5), fraction * e2.quantile(0.5)};
}

std::pair<double, double> ZPolicy::resolve(const Marginal& m1, const Marginal& m2) const {
  if (!median_fraction) return {z1, z2};
  return {fraction * m1.median(), fraction * m2.median()};
}

void McConfig::validate() const {
  if (n < 50) throw ConfigError("experiment needs n >= 50");
  if (replicates < 10) throw ConfigError("experiment needs at least 10 replicates");
  if (copula == CopulaKind::clayton && !(theta > 0.0))
    throw ConfigError("Clayton copula needs theta > 0");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must be in (0,1)");
  if (grid < 16) throw ConfigError("quadrature grid must have at least 16 nodes");
  if (bootstrap != 0 && bootstrap < 100)
    throw ConfigError("bootstrap needs at least 100 resamples (or 0 to disable)");
  if (inequality.empty() && poverty.empty())
    throw ConfigError("experiment needs at least one measure");
  if (z.median_fraction) {
    if (!(z.fraction > 0.0)) throw ConfigError("median fraction must be positive");
  } else if (!(z.z1 > 0.0) || !(z.z2 > 0.0)) {
    throw ConfigError("fixed poverty lines must be positive");
  }
}

IncomePanel sample_panel(const McConfig& cfg, std::size_t replicate) {
  std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(replicate));
  std::vector<double> x1(cfg.n);
  std::vector<double> x2(cfg.n);
  const double theta = cfg.theta;
  for (std::size_t j = 0; j < cfg.n; ++j) {
    const double u = unif01(rng);
    double v = 0.0;
    switch (cfg.copula) {
      case CopulaKind::independence:
        v = unif01(rng);
        break;
      case CopulaKind::comonotone:
        v = u;
        break;
      case CopulaKind::clayton: {
        const double w = unif01(rng);
        v = std::pow((std::pow(w, -theta / (1.0 + theta)) - 1.0) * std::pow(u, -theta) + 1.0,
                     -1.0 / theta);
        break;
      }
    }
    x1[j] = cfg.marginal1.quantile(u);
    x2[j] = cfg.marginal2.quantile(v);
  }
  return IncomePanel::make(std::move(x1), std::move(x2));
}

std::optional<double> true_inequality(const InequalitySpec& spec, const Marginal& m) {
  if (m.kind != MarginalKind::lognormal) return std::nullopt;
  const double s2 = m.b * m.b;
  switch (spec.family) {
    case InequalityFamily::theil:
    case InequalityFamily::mld:
      return s2 / 2.0;
    case InequalityFamily::ge: {
      const double aa = spec.param * (spec.param - 1.0);
      return (std::exp(aa * s2 / 2.0) - 1.0) / aa;
    }
    case InequalityFamily::atkinson:
      return 1.0 - std::exp((spec.param - 1.0) * s2 / 2.0);
    case InequalityFamily::champernowne:
      return 1.0 - std::exp(-s2 / 2.0);
    case InequalityFamily::kolm:
      return std::nullopt;  // no closed form under these marginals
  }
  return std::nullopt;
}

std::optional<double> true_poverty(const PovertySpec& spec, const Marginal& m, double z) {
  if (spec.family != PovertyFamily::fgt) return std::nullopt;
  const double gz = m.cdf(z);
  if (spec.alpha == 0.0) return gz;

  // Censored moments E[X^r 1{X <= z}] for the first two gap powers.
  double ex1 = 0.0;
  double ex2 = 0.0;
  if (m.kind == MarginalKind::lognormal) {
    const double mu = m.a;
    const double s = m.b;
    const double lz = std::log(z);
    ex1 = std::exp(mu + s * s / 2.0) * normal_cdf((lz - mu - s * s) / s);
    ex2 = std::exp(2.0 * mu + 2.0 * s * s) * normal_cdf((lz - mu - 2.0 * s * s) / s);
  } else if (m.kind == MarginalKind::exponential) {
    const double lam = m.a;
    const double e = std::exp(-lam * z);
    ex1 = (1.0 - e) / lam - z * e;
    ex2 = 2.0 / (lam * lam) - e * (z * z + 2.0 * z / lam + 2.0 / (lam * lam));
  } else {
    return std::nullopt;
  }
  if (spec.alpha == 1.0) return gz - ex1 / z;
  if (spec.alpha == 2.0) return gz - 2.0 * ex1 / z + ex2 / (z * z);
  return std::nullopt;
}

namespace {

std::vector<double> quantile_grid(const Marginal& m, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t k = 0; k < n; ++k)
    xs[k] = m.quantile((static_cast<double>(k) + 0.5) / static_cast<double>(n));
  return xs;
}

std::map<std::string, double>& pseudo_cache() {
  static std::map<std::string, double> cache;
  return cache;
}

}  // namespace

double pseudo_true_inequality(const InequalitySpec& spec, const Marginal& m,
                              std::size_t n) {
  const std::string key = "I|" + spec.name + "|" + m.describe() + "|" + std::to_string(n);
  auto& cache = pseudo_cache();
  if (const auto it = cache.find(key); it != cache.end()) return it->second;
  const double value = inequality_eval(spec, quantile_grid(m, n)).value;
  cache[key] = value;
  return value;
}

double pseudo_true_poverty(const PovertySpec& spec, const Marginal& m, double z,
                           std::size_t n) {
  const std::string key = "J|" + spec.name + "|" + m.describe() + "|" +
                          std::to_string(z) + "|" + std::to_string(n);
  auto& cache = pseudo_cache();
  if (const auto it = cache.find(key); it != cache.end()) return it->second;
  const double value = poverty_eval(spec, quantile_grid(m, n), z).value;
  cache[key] = value;
  return value;
}

double bootstrap_variance(const IncomePanel& panel,
                          const std::function<double(const IncomePanel&)>& estimator,
                          std::size_t resamples, std::uint64_t seed) {
  if (resamples < 100) throw ConfigError("bootstrap needs at least 100 resamples");
  const std::size_t n = panel.n();
  std::mt19937_64 rng(seed);
  std::vector<double> stats;
  stats.reserve(resamples);
  std::size_t degenerate = 0;
  IncomePanel resample;
  resample.x1.resize(n);
  resample.x2.resize(n);
  for (std::size_t b = 0; b < resamples; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = bounded_index(rng, n);  // paired: keeps dependence
      resample.x1[j] = panel.x1[idx];
      resample.x2[j] = panel.x2[idx];
    }
    try {
      stats.push_back(estimator(resample));
    } catch (const DegenerateError&) {
      ++degenerate;
    }
  }
  if (degenerate * 10 >= resamples)
    throw DegenerateError("bootstrap oracle unreliable: " + std::to_string(degenerate) +
                          " of " + std::to_string(resamples) +
                          " resamples left the estimator degenerate");
  const std::size_t good = stats.size();
  const double mean_stat = mean(stats);
  KahanSum acc;
  for (double s : stats) acc.add((s - mean_stat) * (s - mean_stat));
  const double var = acc.value() / static_cast<double>(good - 1);
  return static_cast<double>(n) * var;
}

namespace {

struct MeasureTask {
  std::string measure;
  std::string kind;
  std::function<double(const IncomePanel&)> delta;
  std::function<double(const IncomePanel&)> gamma;
  double true_delta = 0;
  std::string truth_source;
};

}  // namespace

std::vector<CoverageResult> coverage_experiment(const McConfig& cfg) {
  cfg.validate();
  const auto [tz1, tz2] = cfg.z.resolve(cfg.marginal1, cfg.marginal2);
  const bool identical_setup = cfg.marginal1 == cfg.marginal2 && tz1 == tz2;

  std::vector<MeasureTask> tasks;
  for (const auto& spec : cfg.inequality) {
    MeasureTask t;
    t.measure = spec.name;
    t.kind = "inequality";
    t.delta = [spec](const IncomePanel& p) { return delta_inequality(spec, p); };
    t.gamma = [spec](const IncomePanel& p) { return gamma_inequality(spec, p); };
    const auto t1 = true_inequality(spec, cfg.marginal1);
    const auto t2 = true_inequality(spec, cfg.marginal2);
    if (t1 && t2) {
      t.true_delta = *t2 - *t1;
      t.truth_source = "closed-form";
    } else if (identical_setup) {
      t.true_delta = 0.0;
      t.truth_source = "identical-marginals";
    } else {
      t.true_delta = pseudo_true_inequality(spec, cfg.marginal2) -
                     pseudo_true_inequality(spec, cfg.marginal1);
      t.truth_source = "pseudo-truth(n=1000000)";
    }
    tasks.push_back(std::move(t));
  }
  for (const auto& spec : cfg.poverty) {
    MeasureTask t;
    t.measure = spec.name;
    t.kind = "poverty";
    const std::size_t m = cfg.grid;
    t.delta = [spec, z1 = tz1, z2 = tz2](const IncomePanel& p) {
      return delta_poverty(spec, p, z1, z2);
    };
    t.gamma = [spec, z1 = tz1, z2 = tz2, m](const IncomePanel& p) {
      return gamma_poverty(spec, p, z1, z2, m).total;
    };
    const auto t1 = true_poverty(spec, cfg.marginal1, tz1);
    const auto t2 = true_poverty(spec, cfg.marginal2, tz2);
    if (t1 && t2) {
      t.true_delta = *t2 - *t1;
      t.truth_source = "closed-form";
    } else if (identical_setup) {
      t.true_delta = 0.0;
      t.truth_source = "identical-marginals";
    } else {
      t.true_delta = pseudo_true_poverty(spec, cfg.marginal2, tz2) -
                     pseudo_true_poverty(spec, cfg.marginal1, tz1);
      t.truth_source = "pseudo-truth(n=1000000)";
    }
    tasks.push_back(std::move(t));
  }

  std::vector<CoverageResult> results;
  results.reserve(tasks.size());
  for (const auto& task : tasks) {
    CoverageResult res;
    res.measure = task.measure;
    res.kind = task.kind;
    res.truth_source = task.truth_source;
    res.true_delta = task.true_delta;
    res.boot_analytic_ratio = std::numeric_limits<double>::quiet_NaN();
    std::size_t covered = 0;
    KahanSum width;
    for (std::size_t r = 0; r < cfg.replicates; ++r) {
      const IncomePanel panel = sample_panel(cfg, r);
      double d = 0.0;
      double g = 0.0;
      try {
        d = task.delta(panel);
        g = task.gamma(panel);
      } catch (const DegenerateError&) {
        ++res.failures;
        continue;
      }
      const ConfidenceInterval ci = wald_ci(d, g, cfg.n, cfg.level);
      if (ci.contains(task.true_delta)) ++covered;
      width.add(ci.width());
      ++res.replicates;
      if (r == 0 && cfg.bootstrap > 0) {
        const double boot =
            bootstrap_variance(panel, task.delta, cfg.bootstrap,
                               cfg.seed ^ 0x9E3779B97F4A7C15ULL);
        res.boot_analytic_ratio = boot / g;
      }
    }
    if (res.replicates == 0)
      throw DegenerateError(task.measure + ": every replicate was degenerate");
    res.coverage = static_cast<double>(covered) / static_cast<double>(res.replicates);
    res.mean_ci_width = width.value() / static_cast<double>(res.replicates);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace propoor
