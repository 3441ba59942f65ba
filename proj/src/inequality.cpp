#include "propoor/inequality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

namespace {

std::string param_name(const char* stem, double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s(%g)", stem, p);
  return buf;
}

void check_domain(const InequalitySpec& spec, std::span<const double> sample) {
  if (sample.empty()) throw DataError(spec.name + ": empty sample");
  if (!spec.requires_positive) return;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    if (!(sample[j] > 0.0))
      throw DataError(spec.name + ": nonpositive income " + std::to_string(sample[j]) +
                      " at index " + std::to_string(j));
  }
}

}  // namespace

InequalitySpec InequalitySpec::generalized_entropy(double alpha) {
  if (alpha == 0.0 || alpha == 1.0)
    throw ConfigError("GE needs alpha outside {0,1}; use MLD or THEIL for the limits");
  const double aa = alpha * (alpha - 1.0);
  InequalitySpec s;
  s.family = InequalityFamily::ge;
  s.param = alpha;
  s.name = param_name("GE", alpha);
  s.tau = [aa](double x) { return (x - 1.0) / aa; };
  s.tau_prime = [aa](double) { return 1.0 / aa; };
  s.h = [alpha](double x) { return std::pow(x, alpha); };
  s.h1 = s.h;
  s.h1_prime = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0); };
  s.h2 = [](double) { return 0.0; };
  s.h2_prime = [](double) { return 0.0; };
  return s;
}

InequalitySpec InequalitySpec::theil() {
  InequalitySpec s;
  s.family = InequalityFamily::theil;
  s.name = "THEIL";
  s.tau = [](double x) { return x; };
  s.tau_prime = [](double) { return 1.0; };
  s.h = [](double x) { return x * std::log(x); };
  s.h1 = [](double x) { return x; };
  s.h1_prime = [](double) { return 1.0; };
  s.h2 = [](double x) { return std::log(x); };
  s.h2_prime = [](double x) { return 1.0 / x; };
  return s;
}

InequalitySpec InequalitySpec::mld() {
  InequalitySpec s;
  s.family = InequalityFamily::mld;
  s.name = "MLD";
  s.tau = [](double x) { return x; };
  s.tau_prime = [](double) { return 1.0; };
  s.h = [](double x) { return -std::log(x); };
  s.h1 = [](double) { return 1.0; };
  s.h1_prime = [](double) { return 0.0; };
  s.h2 = [](double x) { return -std::log(x); };
  s.h2_prime = [](double x) { return -1.0 / x; };
  return s;
}

InequalitySpec InequalitySpec::atkinson(double alpha) {
  if (!(alpha < 1.0) || alpha == 0.0)
    throw ConfigError("Atkinson needs alpha < 1 and alpha != 0");
  InequalitySpec s;
  s.family = InequalityFamily::atkinson;
  s.param = alpha;
  s.name = param_name("ATK", alpha);
  const double inv_a = 1.0 / alpha;
  s.tau = [inv_a](double x) { return 1.0 - std::pow(x, inv_a); };
  s.tau_prime = [inv_a](double x) { return -inv_a * std::pow(x, inv_a - 1.0); };
  s.h = [alpha](double x) { return std::pow(x, alpha); };
  s.h1 = s.h;
  s.h1_prime = [alpha](double x) { return alpha * std::pow(x, alpha - 1.0); };
  s.h2 = [](double) { return 0.0; };
  s.h2_prime = [](double) { return 0.0; };
  return s;
}

InequalitySpec InequalitySpec::champernowne() {
  InequalitySpec s;
  s.family = InequalityFamily::champernowne;
  s.name = "CHAMP";
  s.tau = [](double x) { return 1.0 - std::exp(x); };
  s.tau_prime = [](double x) { return -std::exp(x); };
  s.h = [](double x) { return std::log(x); };
  s.h1 = [](double) { return 1.0; };
  s.h1_prime = [](double) { return 0.0; };
  s.h2 = [](double x) { return std::log(x); };
  s.h2_prime = [](double x) { return 1.0 / x; };
  return s;
}

InequalitySpec InequalitySpec::kolm(double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("Kolm needs alpha > 0");
  InequalitySpec s;
  s.family = InequalityFamily::kolm;
  s.param = alpha;
  s.name = param_name("KOLM", alpha);
  s.tau = [alpha](double x) { return std::log(x) / alpha; };
  s.tau_prime = [alpha](double x) { return 1.0 / (alpha * x); };
  s.h = [alpha](double x) { return std::exp(-alpha * x); };
  s.h1 = s.h;
  s.h1_prime = [alpha](double x) { return -alpha * std::exp(-alpha * x); };
  s.h2 = [](double) { return 0.0; };
  s.h2_prime = [](double) { return 0.0; };
  s.requires_positive = false;  // exp is total; Kolm is an absolute measure
  s.scale_invariant = false;
  s.translation_invariant = true;
  return s;
}

InequalitySpec InequalitySpec::parse(const std::string& token) {
  std::string t;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  std::string stem = t;
  std::string arg;
  const auto colon = t.find_first_of(":(");
  if (colon != std::string::npos) {
    stem = t.substr(0, colon);
    arg = t.substr(colon + 1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
  }
  auto need_param = [&](const char* what) {
    if (arg.empty()) throw ConfigError(std::string(what) + " needs a parameter, e.g. " +
                                       what + ":0.5");
    try {
      std::size_t used = 0;
      const double val = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return val;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse parameter '" + arg + "' in measure '" + token + "'");
    }
  };
  if (stem == "THEIL") return theil();
  if (stem == "MLD") return mld();
  if (stem == "CHAMP") return champernowne();
  if (stem == "GE") return generalized_entropy(need_param("GE"));
  if (stem == "ATK") return atkinson(need_param("ATK"));
  if (stem == "KOLM") return kolm(need_param("KOLM"));
  throw ConfigError("unknown inequality measure '" + token +
                    "' (expected GE:a, THEIL, MLD, ATK:a, CHAMP, KOLM:a)");
}

InequalityEstimate inequality_eval(const InequalitySpec& spec,
                                   std::span<const double> sample, int period) {
  check_domain(spec, sample);
  const std::size_t n = sample.size();
  KahanSum mu_acc;
  KahanSum b_acc;
  for (double x : sample) {
    mu_acc.add(x);
    b_acc.add(spec.h(x));
  }
  InequalityEstimate est;
  est.period = period;
  est.mu = mu_acc.value() / static_cast<double>(n);
  est.b = b_acc.value() / static_cast<double>(n);
  const double arg = est.b / spec.h1(est.mu) - spec.h2(est.mu);
  est.value = spec.tau(arg);
  est.k = spec.tau_prime(arg);
  if (!std::isfinite(est.value) || !std::isfinite(est.k))
    throw NumericError(spec.name + ": non-finite index value (tau argument " +
                       std::to_string(arg) + ")");
  return est;
}

InequalityInfluence::InequalityInfluence(const InequalitySpec& spec,
                                         const InequalityEstimate& est,
                                         const Ecdf& ecdf, int period)
    : ecdf_(&ecdf), h_(spec.h), k_(est.k), period_(period) {
  const double h1mu = spec.h1(est.mu);
  inv_h1mu_ = 1.0 / h1mu;
  slope_ = est.b * spec.h1_prime(est.mu) / (h1mu * h1mu) + spec.h2_prime(est.mu);
}

double InequalityInfluence::operator()(double u, double v) const {
  const double y = ecdf_->quantile(period_ == 1 ? u : v);
  return k_ * (h_(y) * inv_h1mu_ - slope_ * y);
}

double influence_inequality(const InequalitySpec& spec, const IncomePanel& panel,
                            int period, double u, double v) {
  if (period != 1 && period != 2) throw ConfigError("period must be 1 or 2");
  const auto& xs = (period == 1) ? panel.x1 : panel.x2;
  const InequalityEstimate est = inequality_eval(spec, xs, period);
  const Ecdf ecdf(xs);
  return InequalityInfluence(spec, est, ecdf, period)(u, v);
}

std::vector<double> inequality_influence_series(const InequalitySpec& spec,
                                                const IncomePanel& panel,
                                                const PseudoObs& obs) {
  const InequalityEstimate e1 = inequality_eval(spec, panel.x1, 1);
  const InequalityEstimate e2 = inequality_eval(spec, panel.x2, 2);
  const Ecdf g1(panel.x1);
  const Ecdf g2(panel.x2);
  const InequalityInfluence f1(spec, e1, g1, 1);
  const InequalityInfluence f2(spec, e2, g2, 2);
  const std::size_t n = panel.n();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = f2(obs.u[j], obs.v[j]) - f1(obs.u[j], obs.v[j]);
    if (!std::isfinite(out[j]))
      throw NumericError(spec.name + ": non-finite influence at pseudo-observation " +
                         std::to_string(j));
  }
  return out;
}

double delta_inequality(const InequalitySpec& spec, const IncomePanel& panel) {
  return inequality_eval(spec, panel.x2, 2).value - inequality_eval(spec, panel.x1, 1).value;
}

double gamma_inequality(const InequalitySpec& spec, const IncomePanel& panel) {
  const PseudoObs obs = pseudo_observations(panel);
  const std::vector<double> diff = inequality_influence_series(spec, panel, obs);
  return population_variance(diff);
}

}  // namespace propoor
