#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "propoor/errors.hpp"
#include "propoor/io.hpp"

namespace {

// Comma-separated measure tokens, e.g. "GE:0.5,THEIL,MLD" / "FGT:1,SEN".
std::vector<std::string> split_tokens(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    std::string item = csv.substr(start, comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Joint variation analysis of inequality and poverty indices "
               "on paired income data"};
  app.require_subcommand(0, 1);

  std::string data1, data2, paired;
  std::string ineq_csv = "THEIL";
  std::string pov_csv = "FGT:1";
  std::string format_token = "text";
  double z1 = 0, z2 = 0, z_frac = 0;
  double level = 0.95;
  std::size_t grid = 256;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;

  app.add_option("--data1", data1, "income file, one value per line (period 1)")
      ->envname("PROPOOR_DATA1");
  app.add_option("--data2", data2, "income file, one value per line (period 2)")
      ->envname("PROPOOR_DATA2");
  app.add_option("--paired", paired, "two-column income file (both periods)")
      ->envname("PROPOOR_PAIRED");
  app.add_option("--ineq", ineq_csv,
                 "inequality measures: GE:a, THEIL, MLD, ATK:a, CHAMP, KOLM:a")
      ->envname("PROPOOR_INEQ");
  app.add_option("--pov", pov_csv, "poverty measures: FGT:a, SEN, KAK:k, SHOR")
      ->envname("PROPOOR_POV");
  auto* z1_opt = app.add_option("--z1", z1, "fixed poverty line, period 1")
                     ->envname("PROPOOR_Z1");
  auto* z2_opt = app.add_option("--z2", z2, "fixed poverty line, period 2")
                     ->envname("PROPOOR_Z2");
  auto* zf_opt =
      app.add_option("--z-median-frac", z_frac,
                     "poverty line as a fraction of each period's median (default 0.5)")
          ->envname("PROPOOR_Z_MEDIAN_FRAC");
  app.add_option("--level", level, "confidence level (default 0.95)")
      ->envname("PROPOOR_LEVEL");
  app.add_option("--grid", grid, "quadrature nodes for variance integrals (default 256)")
      ->envname("PROPOOR_GRID");
  app.add_option("--bootstrap", bootstrap,
                 "percentile-bootstrap resamples for the CIs (0 = analytic Wald)")
      ->envname("PROPOOR_BOOTSTRAP");
  app.add_option("--seed", seed, "bootstrap RNG seed")->envname("PROPOOR_SEED");
  app.add_option("--format", format_token, "text, csv, or json")
      ->envname("PROPOOR_FORMAT");

  auto* mc = app.add_subcommand("mc", "coverage experiment driven by a key=value file");
  std::string mc_config_path;
  std::string mc_format_token = "text";
  mc->add_option("--config", mc_config_path, "experiment file (key = value, '#' comments)")
      ->required()
      ->envname("PROPOOR_MC_CONFIG");
  mc->add_option("--format", mc_format_token, "text, csv, or json")
      ->envname("PROPOOR_MC_FORMAT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the parse error
    return rc == 0 ? 0 : 2;     // bad flags are configuration errors
  }

  if (mc->parsed()) {
    const propoor::McConfig cfg = propoor::load_mc_config(mc_config_path);
    const auto results = propoor::coverage_experiment(cfg);
    std::fputs(propoor::render(results, propoor::parse_format(mc_format_token)).c_str(),
               stdout);
    return 0;
  }

  propoor::RunConfig cfg;
  cfg.data1 = data1;
  cfg.data2 = data2;
  cfg.paired = paired;
  for (const auto& token : split_tokens(ineq_csv))
    cfg.inequality.push_back(propoor::InequalitySpec::parse(token));
  for (const auto& token : split_tokens(pov_csv))
    cfg.poverty.push_back(propoor::PovertySpec::parse(token));
  const bool fixed_z = z1_opt->count() > 0 || z2_opt->count() > 0;
  if (fixed_z && zf_opt->count() > 0)
    throw propoor::ConfigError("--z-median-frac cannot be combined with --z1/--z2");
  if (fixed_z) {
    if (z1_opt->count() == 0 || z2_opt->count() == 0)
      throw propoor::ConfigError("fixed poverty lines need both --z1 and --z2");
    cfg.z.median_fraction = false;
    cfg.z.z1 = z1;
    cfg.z.z2 = z2;
  } else if (zf_opt->count() > 0) {
    cfg.z.fraction = z_frac;
  }
  cfg.level = level;
  cfg.grid = grid;
  cfg.bootstrap = bootstrap;
  cfg.seed = seed;
  cfg.format = propoor::parse_format(format_token);

  const propoor::PipelineResult result = propoor::run_pipeline(cfg);
  std::fputs(propoor::render(result, cfg.format).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const propoor::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return static_cast<int>(err.code());
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
