#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "propoor/errors.hpp"
#include "propoor/io.hpp"

using namespace propoor;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() / ("propoor_test_" + name);
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::string str() const { return path.string(); }
};

const std::string p12_x1 = "3.1\n1.2\n4.5\n2.2\n5.9\n0.8\n2.2\n7.4\n1.9\n3.3\n6.1\n2.7\n";
const std::string p12_x2 = "2.9\n1.6\n5.2\n1.9\n6.4\n1.1\n2.5\n8.1\n1.4\n4.0\n5.5\n3.6\n";

RunConfig p12_config(const std::string& f1, const std::string& f2) {
  RunConfig cfg;
  cfg.data1 = f1;
  cfg.data2 = f2;
  cfg.inequality = {InequalitySpec::generalized_entropy(0.5),
                    InequalitySpec::theil(),
                    InequalitySpec::mld(),
                    InequalitySpec::atkinson(0.5),
                    InequalitySpec::atkinson(-0.5),
                    InequalitySpec::champernowne(),
                    InequalitySpec::kolm(1.0),
                    InequalitySpec::generalized_entropy(2.0)};
  cfg.poverty = {PovertySpec::fgt(0.0), PovertySpec::fgt(1.0), PovertySpec::fgt(2.0),
                 PovertySpec::sen(),    PovertySpec::kakwani(2), PovertySpec::shorrocks()};
  cfg.z.median_fraction = false;
  cfg.z.z1 = 2.5;
  cfg.z.z2 = 2.8;
  return cfg;
}

}  // namespace

TEST_CASE("format tokens") {
  CHECK_EQ(parse_format("text"), OutputFormat::text);
  CHECK_EQ(parse_format("CSV"), OutputFormat::csv);
  CHECK_EQ(parse_format("Json"), OutputFormat::json);
  CHECK_THROWS_AS((void)parse_format("yaml"), ConfigError);
}

TEST_CASE("run configuration validation") {
  TempFile f1("v1.txt", p12_x1), f2("v2.txt", p12_x2);
  RunConfig cfg = p12_config(f1.str(), f2.str());
  CHECK_NOTHROW(cfg.validate());

  RunConfig both = cfg;
  both.paired = "x.txt";
  CHECK_THROWS_AS(both.validate(), ConfigError);

  RunConfig neither = cfg;
  neither.data1.clear();
  neither.data2.clear();
  CHECK_THROWS_AS(neither.validate(), ConfigError);

  RunConfig no_measures = cfg;
  no_measures.inequality.clear();
  no_measures.poverty.clear();
  CHECK_THROWS_AS(no_measures.validate(), ConfigError);

  RunConfig bad_level = cfg;
  bad_level.level = 1.0;
  CHECK_THROWS_AS(bad_level.validate(), ConfigError);

  RunConfig bad_grid = cfg;
  bad_grid.grid = 8;
  CHECK_THROWS_AS(bad_grid.validate(), ConfigError);

  RunConfig small_boot = cfg;
  small_boot.bootstrap = 50;
  CHECK_THROWS_AS(small_boot.validate(), ConfigError);

  RunConfig bad_z = cfg;
  bad_z.z.z2 = -1.0;
  CHECK_THROWS_AS(bad_z.validate(), ConfigError);
}

TEST_CASE("income files parse strictly, with located errors") {
  SUBCASE("comma is not a number") {
    TempFile bad("bad.txt", "1.5\n12,5\n2.0\n");
    TempFile ok("ok.txt", "1\n2\n3\n");
    try {
      (void)load_panel(bad.str(), ok.str());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find(":2:") != std::string::npos);
      CHECK(msg.find("12,5") != std::string::npos);
    }
  }
  SUBCASE("unequal lengths report both counts") {
    TempFile f1("u1.txt", "1\n2\n3\n");
    TempFile f2("u2.txt", "1\n2\n");
    try {
      (void)load_panel(f1.str(), f2.str());
      FAIL("expected DataError");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find('3') != std::string::npos);
      CHECK(msg.find('2') != std::string::npos);
    }
  }
  SUBCASE("too few rows") {
    TempFile f1("s1.txt", "1\n");
    TempFile f2("s2.txt", "2\n");
    CHECK_THROWS_AS((void)load_panel(f1.str(), f2.str()), DataError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS((void)load_panel("/nonexistent/x.txt", "/nonexistent/y.txt"),
                    DataError);
  }
  SUBCASE("blank lines are skipped, whitespace trimmed") {
    TempFile f1("b1.txt", " 1.5 \n\n2.5\n\n3.5\n");
    TempFile f2("b2.txt", "1\n2\n3\n");
    const IncomePanel panel = load_panel(f1.str(), f2.str());
    CHECK_EQ(panel.n(), 3);
    CHECK_EQ(panel.x1[0], 1.5);
  }
  SUBCASE("paired file wants two columns") {
    TempFile good("pg.txt", "1.0 2.0\n3.0\t4.0\n5 6\n");
    const IncomePanel panel = load_paired(good.str());
    CHECK_EQ(panel.n(), 3);
    CHECK_EQ(panel.x2[1], 4.0);
    TempFile bad("pb.txt", "1.0 2.0\n3.0\n");
    CHECK_THROWS_WITH_AS((void)load_paired(bad.str()), doctest::Contains(":2:"),
                         DataError);
  }
}

TEST_CASE("pipeline emits one row per measure and per pair") {
  TempFile f1("r1.txt", p12_x1), f2("r2.txt", p12_x2);
  const RunConfig cfg = p12_config(f1.str(), f2.str());
  const PipelineResult result = run_pipeline(cfg);
  CHECK_EQ(result.n, 12);
  CHECK_EQ(result.inequality.size(), 8);
  CHECK_EQ(result.poverty.size(), 6);
  CHECK_EQ(result.ratios.size(), 48);
  CHECK_EQ(result.method, "wald");
  CHECK_EQ(result.z1, 2.5);
  CHECK_EQ(result.z2, 2.8);
  // poverty-major ordering
  CHECK_EQ(result.ratios[0].poverty_name, "FGT(0)");
  CHECK_EQ(result.ratios[0].inequality_name, "GE(0.5)");
  CHECK_EQ(result.ratios[8].poverty_name, "FGT(1)");
  // per-pair marginals agree with the standalone rows
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t i = 0; i < 8; ++i) {
      const JointReport& r = result.ratios[p * 8 + i];
      CHECK_EQ(r.delta_i, result.inequality[i].delta);
      CHECK_EQ(r.gamma_i, result.inequality[i].gamma);
      CHECK_EQ(r.delta_j, result.poverty[p].delta);
      CHECK_EQ(r.gamma_j.total, result.poverty[p].gamma);
    }
  for (const auto& row : result.inequality) {
    CHECK_LE(row.ci.lo, row.delta);
    CHECK_GE(row.ci.hi, row.delta);
  }
}

TEST_CASE("identical periods produce null variations and labeled degenerate ratios") {
  TempFile f1("i1.txt", p12_x1), f2("i2.txt", p12_x1);
  RunConfig cfg = p12_config(f1.str(), f2.str());
  cfg.z.z2 = 2.5;
  const PipelineResult result = run_pipeline(cfg);
  for (const auto& row : result.inequality) CHECK_EQ(row.delta, 0.0);
  for (const auto& row : result.poverty) CHECK_EQ(row.delta, 0.0);
  for (const auto& r : result.ratios) {
    CHECK(r.ratio_degenerate);
    CHECK_EQ(r.classification, "degenerate");
  }
  // Degenerate rows render as labeled gaps, not crashes.
  const std::string text = render(result, OutputFormat::text);
  CHECK(text.find("degenerate") != std::string::npos);
  const auto j = nlohmann::json::parse(render(result, OutputFormat::json));
  CHECK(j["ratios"][0]["degenerate"].get<bool>());
  CHECK(j["ratios"][0]["ratio"].is_null());
  CHECK(j["ratios"][0]["ci_ratio"].is_null());
}

TEST_CASE("json report carries the full schema and survives a roundtrip") {
  TempFile f1("j1.txt", p12_x1), f2("j2.txt", p12_x2);
  const RunConfig cfg = p12_config(f1.str(), f2.str());
  const PipelineResult result = run_pipeline(cfg);
  const auto j = nlohmann::json::parse(render(result, OutputFormat::json));

  CHECK_EQ(j["n"].get<std::size_t>(), 12);
  CHECK_EQ(j["method"].get<std::string>(), "wald");
  CHECK_EQ(j["inequality"].size(), 8);
  CHECK_EQ(j["poverty"].size(), 6);
  CHECK_EQ(j["ratios"].size(), 48);

  for (const char* key :
       {"poverty", "inequality", "n", "level", "method", "delta_i", "delta_j", "gamma_i",
        "gamma_j", "gamma_j_parts", "gamma_ij", "ci_delta_i", "ci_delta_j", "degenerate",
        "ratio", "a", "b", "gamma_ratio", "ci_ratio", "classification"})
    CHECK(j["ratios"][0].contains(key));

  // Serialization is lossless: the delta-method identity still recomputes
  // from the parsed JSON numbers.
  for (const auto& r : j["ratios"]) {
    if (r["degenerate"].get<bool>()) continue;
    const double a = r["a"].get<double>();
    const double b = r["b"].get<double>();
    const double gi = r["gamma_i"].get<double>();
    const double gj = r["gamma_j"].get<double>();
    const double gij = r["gamma_ij"].get<double>();
    const double gr = r["gamma_ratio"].get<double>();
    CHECK_LE(std::abs(a * a * gj + b * b * gi - 2.0 * a * b * gij - gr),
             1e-12 * std::max(1.0, std::abs(gr)));
    const double parts_total = r["gamma_j_parts"]["gamma1"].get<double>() +
                               r["gamma_j_parts"]["g1"].get<double>() -
                               2.0 * r["gamma_j_parts"]["g2"].get<double>() +
                               r["gamma_j_parts"]["g3"].get<double>() +
                               2.0 * r["gamma_j_parts"]["gamma3"].get<double>();
    CHECK_LE(std::abs(parts_total - gj), 1e-12 * std::max(1.0, std::abs(gj)));
  }

  // Ratio blocks repeat the standalone measure numbers exactly.
  CHECK_EQ(j["ratios"][0]["delta_i"].get<double>(),
           j["inequality"][0]["delta"].get<double>());
  CHECK_EQ(j["ratios"][0]["gamma_j"].get<double>(),
           j["poverty"][0]["gamma"].get<double>());
}

TEST_CASE("table rendering formats") {
  TempFile f1("t1.txt", p12_x1), f2("t2.txt", p12_x2);
  RunConfig cfg = p12_config(f1.str(), f2.str());
  cfg.inequality = {InequalitySpec::theil()};
  cfg.poverty = {PovertySpec::fgt(1.0)};
  const PipelineResult result = run_pipeline(cfg);
  const std::vector<OutputTable> tables = result_tables(result);
  REQUIRE_EQ(tables.size(), 3);
  CHECK_EQ(tables[0].caption, "inequality-variations");
  CHECK_EQ(tables[1].caption, "poverty-variations");
  CHECK_EQ(tables[2].caption, "ratios-by-poverty-family");

  SUBCASE("text is aligned and headed by the caption") {
    const std::string text = render_table(tables[0], OutputFormat::text);
    CHECK(text.rfind("== inequality-variations ==\n", 0) == 0);
    CHECK(text.find("THEIL") != std::string::npos);
    // 7 significant digits
    char want[64];
    std::snprintf(want, sizeof want, "%.7g", result.inequality[0].delta);
    CHECK(text.find(want) != std::string::npos);
  }
  SUBCASE("csv carries 9 significant digits") {
    const std::string csv = render_table(tables[1], OutputFormat::csv);
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    CHECK_EQ(header, "measure,delta_j,gamma_j,ci_lo,ci_hi");
    std::getline(lines, row);
    char want[64];
    std::snprintf(want, sizeof want, "%.9g", result.poverty[0].delta);
    CHECK(row.find(want) != std::string::npos);
  }
  SUBCASE("whole-document csv is one flat table") {
    const std::string csv = render(result, OutputFormat::csv);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK_EQ(line, "table,measure,estimate,gamma,ci_lo,ci_hi,gamma_ij,classification");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      ++rows;
      CHECK_EQ(std::count(line.begin(), line.end(), ','), 7);
    }
    CHECK_EQ(rows, 1 + 1 + 1);
  }
  SUBCASE("non-finite cells are rejected") {
    OutputTable bad = tables[0];
    bad.rows[0].cells[1] = std::nan("");
    CHECK_THROWS_AS((void)render_table(bad, OutputFormat::text), NumericError);
    CHECK_THROWS_AS((void)render_table(bad, OutputFormat::json), NumericError);
  }
  SUBCASE("rendering is byte-deterministic across recomputation") {
    const PipelineResult again = run_pipeline(cfg);
    CHECK_EQ(render(result, OutputFormat::json), render(again, OutputFormat::json));
    CHECK_EQ(render(result, OutputFormat::text), render(again, OutputFormat::text));
    CHECK_EQ(render(result, OutputFormat::csv), render(again, OutputFormat::csv));
  }
}

TEST_CASE("bootstrap mode replaces the intervals and the method tag") {
  TempFile f1("bb1.txt", p12_x1), f2("bb2.txt", p12_x2);
  RunConfig cfg = p12_config(f1.str(), f2.str());
  cfg.inequality = {InequalitySpec::theil()};
  cfg.poverty = {PovertySpec::fgt(1.0)};
  cfg.bootstrap = 200;
  cfg.seed = 7;
  const PipelineResult result = run_pipeline(cfg);
  CHECK_EQ(result.method, "bootstrap");
  REQUIRE_EQ(result.ratios.size(), 1);
  CHECK_EQ(result.ratios[0].method, "bootstrap");
  const ConfidenceInterval ci = result.inequality[0].ci;
  CHECK_LT(ci.lo, ci.hi);
  CHECK(ci.contains(result.inequality[0].delta));
  // Analytic variances are still reported alongside.
  CHECK_GT(result.inequality[0].gamma, 0.0);

  // Same seed, same intervals; different seed, different intervals.
  const PipelineResult same = run_pipeline(cfg);
  CHECK_EQ(same.inequality[0].ci.lo, ci.lo);
  cfg.seed = 8;
  const PipelineResult other = run_pipeline(cfg);
  CHECK_NE(other.inequality[0].ci.lo, ci.lo);
}

TEST_CASE("experiment files parse as key = value") {
  SUBCASE("full file") {
    TempFile f("mc1.cfg",
               "# synthetic check\n"
               "copula = clayton\n"
               "theta = 2\n"
               "marginal1 = lognormal:0:1\n"
               "marginal2 = exponential:1\n"
               "n = 400\n"
               "replicates = 50\n"
               "seed = 99\n"
               "level = 0.9\n"
               "grid = 64\n"
               "bootstrap = 0\n"
               "ineq = THEIL, MLD\n"
               "pov = FGT:1\n"
               "z_median_frac = 0.6\n");
    const McConfig cfg = load_mc_config(f.str());
    CHECK_EQ(cfg.copula, CopulaKind::clayton);
    CHECK_EQ(cfg.theta, 2.0);
    CHECK_EQ(cfg.marginal2, Marginal::exponential(1.0));
    CHECK_EQ(cfg.n, 400);
    CHECK_EQ(cfg.replicates, 50);
    CHECK_EQ(cfg.seed, 99);
    CHECK_EQ(cfg.level, 0.9);
    CHECK_EQ(cfg.grid, 64);
    CHECK_EQ(cfg.inequality.size(), 2);
    CHECK_EQ(cfg.inequality[1].name, "MLD");
    CHECK_EQ(cfg.poverty.size(), 1);
    CHECK(cfg.z.median_fraction);
    CHECK_EQ(cfg.z.fraction, 0.6);
  }
  SUBCASE("defaults when no measures are listed") {
    TempFile f("mc2.cfg", "n = 100\nreplicates = 20\n");
    const McConfig cfg = load_mc_config(f.str());
    CHECK_EQ(cfg.inequality.size(), 1);
    CHECK_EQ(cfg.inequality[0].name, "THEIL");
    CHECK_EQ(cfg.poverty.size(), 1);
    CHECK_EQ(cfg.poverty[0].name, "FGT(1)");
  }
  SUBCASE("fixed lines") {
    TempFile f("mc3.cfg", "z1 = 0.8\nz2 = 0.9\n");
    const McConfig cfg = load_mc_config(f.str());
    CHECK_FALSE(cfg.z.median_fraction);
    CHECK_EQ(cfg.z.z1, 0.8);
  }
  SUBCASE("errors carry the file and line") {
    TempFile f("mc4.cfg", "n = 200\nwalrus = 5\n");
    CHECK_THROWS_WITH_AS((void)load_mc_config(f.str()), doctest::Contains(":2:"),
                         ConfigError);
    TempFile g("mc5.cfg", "n = abc\n");
    CHECK_THROWS_AS((void)load_mc_config(g.str()), ConfigError);
    TempFile h("mc6.cfg", "n 200\n");
    CHECK_THROWS_AS((void)load_mc_config(h.str()), ConfigError);
    CHECK_THROWS_AS((void)load_mc_config("/nonexistent/mc.cfg"), ConfigError);
  }
}

TEST_CASE("coverage results render in all three formats") {
  CoverageResult r;
  r.measure = "THEIL";
  r.kind = "inequality";
  r.truth_source = "closed-form";
  r.true_delta = -0.18;
  r.coverage = 0.94;
  r.mean_ci_width = 0.12;
  r.boot_analytic_ratio = std::nan("");
  r.replicates = 100;
  r.failures = 0;
  const std::vector<CoverageResult> results = {r};
  const std::string text = render(results, OutputFormat::text);
  CHECK(text.find("coverage") != std::string::npos);
  CHECK(text.find("THEIL") != std::string::npos);
  const std::string csv = render(results, OutputFormat::csv);
  CHECK(csv.find("closed-form") != std::string::npos);
  const auto j = nlohmann::json::parse(render(results, OutputFormat::json));
  CHECK_EQ(j[0]["measure"].get<std::string>(), "THEIL");
  CHECK(j[0]["boot_analytic_ratio"].is_null());
  CHECK_THROWS_AS((void)render(std::vector<CoverageResult>{}, OutputFormat::text),
                  ConfigError);
}

TEST_CASE("golden output files stay stable") {
  // Regenerate with: build/tools/propoor --data1 <x1> --data2 <x2> --z1 2.5
  //   --z2 2.8 --ineq GE:0.5,THEIL,MLD,ATK:0.5,ATK:-0.5,CHAMP,KOLM:1,GE:2
  //   --pov FGT:0,FGT:1,FGT:2,SEN,KAK:2,SHOR --format <fmt>
  TempFile f1("g1.txt", p12_x1), f2("g2.txt", p12_x2);
  const RunConfig cfg = p12_config(f1.str(), f2.str());
  const PipelineResult result = run_pipeline(cfg);
  const std::filesystem::path dir = PROPOOR_GOLDEN_DIR;
  const struct {
    const char* file;
    OutputFormat format;
  } cases[] = {{"p12.json", OutputFormat::json},
               {"p12.csv", OutputFormat::csv},
               {"p12.txt", OutputFormat::text}};
  for (const auto& c : cases) {
    std::ifstream in(dir / c.file, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", c.file);
    std::ostringstream want;
    want << in.rdbuf();
    CHECK_EQ(render(result, c.format), want.str());
  }
}
