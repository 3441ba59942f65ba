#include "propoor/poverty.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

namespace {

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// gap^alpha with the usual fast paths; alpha==0 is the poor indicator.
double gap_pow(double gap, double alpha) {
  if (alpha == 0.0) return 1.0;
  if (alpha == 1.0) return gap;
  if (alpha == 2.0) return gap * gap;
  return std::pow(gap, alpha);
}

}  // namespace

PovertySpec PovertySpec::fgt(double alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("FGT needs alpha >= 0");
  PovertySpec s;
  s.family = PovertyFamily::fgt;
  s.alpha = alpha;
  char buf[48];
  std::snprintf(buf, sizeof buf, "FGT(%g)", alpha);
  s.name = buf;
  return s;
}

PovertySpec PovertySpec::sen() {
  PovertySpec s;
  s.family = PovertyFamily::sen;
  s.name = "SEN";
  return s;
}

PovertySpec PovertySpec::kakwani(int k) {
  if (k < 1) throw ConfigError("Kakwani needs integer k >= 1");
  PovertySpec s;
  s.family = PovertyFamily::kakwani;
  s.k = k;
  char buf[48];
  std::snprintf(buf, sizeof buf, "KAK(%d)", k);
  s.name = buf;
  return s;
}

PovertySpec PovertySpec::shorrocks() {
  PovertySpec s;
  s.family = PovertyFamily::shorrocks;
  s.name = "SHOR";
  return s;
}

PovertySpec PovertySpec::custom(std::string name, CustomG g, CustomNu nu) {
  if (!g) throw ConfigError("custom poverty spec needs a g kernel");
  PovertySpec s;
  s.family = PovertyFamily::custom;
  s.name = std::move(name);
  s.custom_g = std::move(g);
  s.custom_nu = std::move(nu);
  return s;
}

PovertySpec PovertySpec::parse(const std::string& token) {
  std::string t;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c)))
      t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  std::string stem = t;
  std::string arg;
  const auto sep = t.find_first_of(":(");
  if (sep != std::string::npos) {
    stem = t.substr(0, sep);
    arg = t.substr(sep + 1);
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
  }
  auto parse_num = [&](const char* what) {
    if (arg.empty())
      throw ConfigError(std::string(what) + " needs a parameter, e.g. " + what + ":1");
    try {
      std::size_t used = 0;
      const double val = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return val;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse parameter '" + arg + "' in measure '" + token + "'");
    }
  };
  if (stem == "SEN") return sen();
  if (stem == "SHOR" || stem == "THON") return shorrocks();
  if (stem == "FGT") return fgt(parse_num("FGT"));
  if (stem == "KAK") {
    const double kd = parse_num("KAK");
    if (kd != std::floor(kd) || kd < 1.0)
      throw ConfigError("Kakwani order must be an integer >= 1, got '" + arg + "'");
    return kakwani(static_cast<int>(kd));
  }
  throw ConfigError("unknown poverty measure '" + token +
                    "' (expected FGT:a, SEN, KAK:k, SHOR)");
}

PovertyKernel::PovertyKernel(const PovertySpec& spec, const Ecdf& ecdf, double z,
                             bool require_h1)
    : spec_(spec), ecdf_(&ecdf), z_(z) {
  if (!std::isfinite(z) || z <= 0.0)
    throw ConfigError(spec.name + ": poverty line must be positive and finite, got " +
                      std::to_string(z));
  const std::size_t n = ecdf.size();
  const auto q = static_cast<std::size_t>(
      std::upper_bound(ecdf.sorted().begin(), ecdf.sorted().end(), z) -
      ecdf.sorted().begin());
  headcount_ = static_cast<double>(q) / static_cast<double>(n);
  const bool needs_constants =
      spec.family == PovertyFamily::sen || spec.family == PovertyFamily::kakwani;
  if ((require_h1 || needs_constants) && (q == 0 || q == n))
    throw DegenerateError(spec.name + ": poverty line " + std::to_string(z) +
                          " leaves " + std::to_string(q) + " of " + std::to_string(n) +
                          " observations poor (need some poor and some non-poor)");
  if (!needs_constants) return;

  // Integrals over (0, G_n(Z)) as right-endpoint order-statistic sums:
  // (1/n) sum_{j: X_(j) <= Z} phi(j/n, X_(j)).
  const auto& xs = ecdf.sorted();
  const double gz = headcount_;
  KahanSum j_acc;
  KahanSum k_acc;
  if (spec.family == PovertyFamily::sen) {
    KahanSum income_acc;
    for (std::size_t j = 1; j <= q; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(n);
      const double gap = (z_ - xs[j - 1]) / z_;
      j_acc.add((1.0 - s / gz) * gap);
      income_acc.add(xs[j - 1]);
    }
    j_const_ = 2.0 * j_acc.value() / static_cast<double>(n);
    k_const_ = 2.0 * (1.0 - income_acc.value() / (static_cast<double>(n) * z_ * gz)) +
               j_const_ / gz;
  } else {
    const int kk = spec.k;
    for (std::size_t j = 1; j <= q; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(n);
      const double gap = (z_ - xs[j - 1]) / z_;
      const double w = 1.0 - s / gz;
      j_acc.add(int_pow(w, kk) * gap);
      k_acc.add(int_pow(w, kk - 1) * gap);
    }
    j_const_ = (kk + 1.0) * j_acc.value() / static_cast<double>(n);
    k_const_ = (kk * (kk + 1.0) / gz) * k_acc.value() / static_cast<double>(n) +
               j_const_ / gz;
  }
}

double PovertyKernel::g(double x) const {
  if (spec_.family == PovertyFamily::custom) return spec_.custom_g(*ecdf_, z_, x);
  if (x > z_) return 0.0;
  const double gap = (z_ - x) / z_;
  switch (spec_.family) {
    case PovertyFamily::fgt:
      return gap_pow(gap, spec_.alpha);
    case PovertyFamily::shorrocks:
      return 2.0 * (1.0 - (*ecdf_)(x)) * gap;
    case PovertyFamily::sen: {
      const double r = (*ecdf_)(x) / headcount_;
      return 2.0 * ((1.0 - r) * gap - r * (j_const_ / headcount_)) + k_const_;
    }
    case PovertyFamily::kakwani: {
      const double r = (*ecdf_)(x) / headcount_;
      const int kk = spec_.k;
      return (kk + 1.0) * (int_pow(1.0 - r, kk) * gap -
                           (j_const_ / headcount_) * int_pow(r, kk)) +
             k_const_;
    }
    default:
      return 0.0;
  }
}

double PovertyKernel::nu(double s) const {
  if (spec_.family == PovertyFamily::fgt) return 0.0;
  if (spec_.family == PovertyFamily::custom)
    return spec_.custom_nu ? spec_.custom_nu(*ecdf_, z_, s) : 0.0;
  const double y = ecdf_->quantile(s);
  if (y > z_) return 0.0;
  const double gap = (z_ - y) / z_;
  switch (spec_.family) {
    case PovertyFamily::shorrocks:
      return -2.0 * gap;
    case PovertyFamily::sen:
      return -(2.0 / headcount_) * (gap + j_const_ / headcount_);
    case PovertyFamily::kakwani: {
      const int kk = spec_.k;
      const double r = s / headcount_;
      return -(kk * (kk + 1.0) / headcount_) *
             (int_pow(1.0 - r, kk - 1) * gap +
              (j_const_ / headcount_) * int_pow(r, kk - 1));
    }
    default:
      return 0.0;
  }
}

PovertyEstimate poverty_eval(const PovertySpec& spec, std::span<const double> sample,
                             double z, int period) {
  const Ecdf ecdf(std::vector<double>(sample.begin(), sample.end()));
  const PovertyKernel kernel(spec, ecdf, z);
  PovertyEstimate est;
  est.period = period;
  est.z = z;
  est.headcount = kernel.headcount();
  est.j_const = kernel.j_const();
  est.k_const = kernel.k_const();
  switch (spec.family) {
    case PovertyFamily::sen:
    case PovertyFamily::kakwani:
      // The index is the empirical J constant itself.
      est.value = kernel.j_const();
      break;
    default: {
      KahanSum acc;
      for (double x : sample) acc.add(kernel.g(x));
      est.value = acc.value() / static_cast<double>(sample.size());
      break;
    }
  }
  if (!std::isfinite(est.value))
    throw NumericError(spec.name + ": non-finite index value");
  return est;
}

std::pair<double, double> kernel_constants(const PovertySpec& spec,
                                           std::span<const double> sample, double z) {
  const Ecdf ecdf(std::vector<double>(sample.begin(), sample.end()));
  const PovertyKernel kernel(spec, ecdf, z);
  return {kernel.j_const(), kernel.k_const()};
}

double delta_poverty(const PovertySpec& spec, const IncomePanel& panel,
                     double z1, double z2) {
  return poverty_eval(spec, panel.x2, z2, 2).value -
         poverty_eval(spec, panel.x1, z1, 1).value;
}

std::vector<double> poverty_influence_series(const PovertyKernel& k1,
                                             const PovertyKernel& k2,
                                             const PseudoObs& obs) {
  const std::size_t n = obs.n();
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = k2.g(k2.ecdf().quantile(obs.v[j])) - k1.g(k1.ecdf().quantile(obs.u[j]));
    if (!std::isfinite(out[j]))
      throw NumericError(k2.spec().name + ": non-finite influence at pseudo-observation " +
                         std::to_string(j));
  }
  return out;
}

double nu_coupling(const PovertyKernel& k1, const PovertyKernel& k2,
                   const PseudoObs& obs, std::span<const double> values,
                   std::size_t m) {
  const std::size_t n = obs.n();
  // Prefix sums of `values` in the order of sorted u (resp. v) turn the
  // T integrands into binary searches: T_u(s) = (1/n) sum w_j 1{u_j < s}.
  auto build = [n](const std::vector<double>& coords, std::span<const double> w) {
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&coords](std::size_t a, std::size_t b) { return coords[a] < coords[b]; });
    std::vector<double> sorted_coord(n);
    std::vector<double> prefix(n + 1, 0.0);
    KahanSum acc;
    for (std::size_t r = 0; r < n; ++r) {
      sorted_coord[r] = coords[order[r]];
      acc.add(w[order[r]]);
      prefix[r + 1] = acc.value();
    }
    return std::make_pair(std::move(sorted_coord), std::move(prefix));
  };
  const auto [su, pu] = build(obs.u, values);
  const auto [sv, pv] = build(obs.v, values);
  auto t_of = [n](const std::vector<double>& coord, const std::vector<double>& prefix,
                  double s) {
    const auto r = static_cast<std::size_t>(
        std::lower_bound(coord.begin(), coord.end(), s) - coord.begin());
    return prefix[r] / static_cast<double>(n);
  };
  const double mean_w = sum(values) / static_cast<double>(n);
  KahanSum i1;
  KahanSum i2;
  const double md = static_cast<double>(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const double s = (static_cast<double>(i) - 0.5) / md;
    const double n2 = k2.nu(s);
    const double n1 = k1.nu(s);
    i1.add(n2 * t_of(sv, pv, s) - n1 * t_of(su, pu, s));
    i2.add(s * (n2 - n1));
  }
  return i1.value() / md - mean_w * (i2.value() / md);
}

PovertyVariance gamma_poverty(const PovertySpec& spec, const IncomePanel& panel,
                              double z1, double z2, std::size_t m) {
  if (m < 16) throw ConfigError("quadrature grid must have at least 16 nodes");
  const Ecdf e1(panel.x1);
  const Ecdf e2(panel.x2);
  const PovertyKernel k1(spec, e1, z1, /*require_h1=*/true);
  const PovertyKernel k2(spec, e2, z2, /*require_h1=*/true);
  const PseudoObs obs = pseudo_observations(panel);
  const std::vector<double> w = poverty_influence_series(k1, k2, obs);

  PovertyVariance out;
  out.gamma1 = population_variance(w);
  if (spec.nu_vanishes()) {
    out.total = out.gamma1;  // all nu terms vanish identically; no quadrature
    return out;
  }

  const double md = static_cast<double>(m);
  std::vector<double> nodes(m);
  std::vector<double> nu1(m);
  std::vector<double> nu2(m);
  for (std::size_t i = 0; i < m; ++i) {
    nodes[i] = (static_cast<double>(i) + 0.5) / md;
    nu1[i] = k1.nu(nodes[i]);
    nu2[i] = k2.nu(nodes[i]);
  }

  auto bridge = [&](const std::vector<double>& nu) {
    KahanSum acc;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        acc.add(nu[i] * nu[j] * (std::min(nodes[i], nodes[j]) - nodes[i] * nodes[j]));
    return acc.value() / (md * md);
  };
  out.g1 = bridge(nu2);
  out.g3 = bridge(nu1);

  // g2 = (1/m^2) sum_{s,t} nu2(s) nu1(t) (C_n(t,s) - t s); the copula's
  // first argument thresholds u (period 1, the nu1 variable).
  const EmpiricalCopula copula(obs);
  const std::vector<double> grid = copula.midpoint_grid(m);
  KahanSum g2_acc;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = grid[j * m + i];
      g2_acc.add(nu2[i] * nu1[j] * (c - nodes[j] * nodes[i]));
    }
  }
  out.g2 = g2_acc.value() / (md * md);

  out.gamma3 = nu_coupling(k1, k2, obs, w, m);
  out.total = out.gamma1 + (out.g1 - 2.0 * out.g2 + out.g3) + 2.0 * out.gamma3;

  // An asymptotic variance must be nonnegative; quadrature can undershoot
  // by a hair, anything worse means an internal inconsistency.
  const double mag = std::abs(out.gamma1) + std::abs(out.g1) + 2.0 * std::abs(out.g2) +
                     std::abs(out.g3) + 2.0 * std::abs(out.gamma3);
  const double tol = 1e-12 + 0.01 * mag;
  if (out.total < -tol)
    throw NumericError(spec.name + ": variance decomposition came out negative (" +
                       std::to_string(out.total) + ")");
  if (out.total < 0.0) out.total = 0.0;
  return out;
}

}  // namespace propoor
