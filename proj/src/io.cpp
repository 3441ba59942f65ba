#include "propoor/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "propoor/errors.hpp"
#include "propoor/numeric.hpp"

namespace propoor {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_income(const std::string& text, const std::string& path, std::size_t line) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || t.empty())
    throw DataError(path + ":" + std::to_string(line) + ": cannot parse '" + trim(text) +
                    "' as an income");
  return value;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const std::string item = trim(csv.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ConfidenceInterval percentile_ci(std::vector<double> draws, double level) {
  const Ecdf dist(std::move(draws));
  return ConfidenceInterval{dist.quantile((1.0 - level) / 2.0),
                            dist.quantile((1.0 + level) / 2.0)};
}

}  // namespace

OutputFormat parse_format(const std::string& token) {
  std::string t;
  for (char c : token) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "text") return OutputFormat::text;
  if (t == "csv") return OutputFormat::csv;
  if (t == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + token + "' (expected text, csv, json)");
}

void RunConfig::validate() const {
  const bool two_files = !data1.empty() || !data2.empty();
  const bool one_file = !paired.empty();
  if (two_files && one_file)
    throw ConfigError("--paired cannot be combined with --data1/--data2");
  if (!one_file && (data1.empty() || data2.empty()))
    throw ConfigError("need either --data1 and --data2, or --paired");
  if (inequality.empty() && poverty.empty())
    throw ConfigError("select at least one measure via --ineq or --pov");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must be in (0,1)");
  if (grid < 16) throw ConfigError("quadrature grid must have at least 16 nodes");
  if (bootstrap != 0 && bootstrap < 100)
    throw ConfigError("bootstrap needs at least 100 resamples (or 0 to disable)");
  if (z.median_fraction) {
    if (!(z.fraction > 0.0)) throw ConfigError("median fraction must be positive");
  } else if (!(z.z1 > 0.0) || !(z.z2 > 0.0)) {
    throw ConfigError("fixed poverty lines must both be positive (--z1 and --z2)");
  }
}

namespace {

std::vector<double> load_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    values.push_back(parse_income(line, path, lineno));
  }
  return values;
}

}  // namespace

IncomePanel load_panel(const std::string& path1, const std::string& path2) {
  std::vector<double> x1 = load_column(path1);
  std::vector<double> x2 = load_column(path2);
  if (x1.size() != x2.size())
    throw DataError("'" + path1 + "' has " + std::to_string(x1.size()) + " incomes but '" +
                    path2 + "' has " + std::to_string(x2.size()) +
                    "; periods must pair line by line");
  if (x1.size() < 2)
    throw DataError("panel needs at least 2 rows, got " + std::to_string(x1.size()));
  return IncomePanel::make(std::move(x1), std::move(x2));
}

IncomePanel load_paired(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<double> x1;
  std::vector<double> x2;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::size_t split = t.find_first_of(" \t");
    if (split == std::string::npos)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected two whitespace-separated incomes, got '" + t + "'");
    x1.push_back(parse_income(t.substr(0, split), path, lineno));
    x2.push_back(parse_income(t.substr(split + 1), path, lineno));
  }
  if (x1.size() < 2)
    throw DataError("panel needs at least 2 rows, got " + std::to_string(x1.size()));
  return IncomePanel::make(std::move(x1), std::move(x2));
}

PipelineResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  const IncomePanel panel =
      cfg.paired.empty() ? load_panel(cfg.data1, cfg.data2) : load_paired(cfg.paired);
  const auto [z1, z2] = cfg.z.resolve(panel);

  PipelineResult result;
  result.n = panel.n();
  result.level = cfg.level;
  result.method = cfg.bootstrap > 0 ? "bootstrap" : "wald";
  result.grid = cfg.grid;
  result.bootstrap = cfg.bootstrap;
  result.seed = cfg.seed;
  result.z1 = z1;
  result.z2 = z2;

  for (const auto& spec : cfg.inequality) {
    MeasureRow row;
    row.name = spec.name;
    row.delta = delta_inequality(spec, panel);
    row.gamma = gamma_inequality(spec, panel);
    row.ci = wald_ci(row.delta, row.gamma, panel.n(), cfg.level);
    result.inequality.push_back(std::move(row));
  }
  for (const auto& spec : cfg.poverty) {
    MeasureRow row;
    row.name = spec.name;
    row.delta = delta_poverty(spec, panel, z1, z2);
    row.gamma = gamma_poverty(spec, panel, z1, z2, cfg.grid).total;
    row.ci = wald_ci(row.delta, row.gamma, panel.n(), cfg.level);
    result.poverty.push_back(std::move(row));
  }
  for (const auto& pov : cfg.poverty)
    for (const auto& ineq : cfg.inequality)
      result.ratios.push_back(assemble_joint(ineq, pov, panel, z1, z2, cfg.level, cfg.grid));

  if (cfg.bootstrap == 0) return result;

  // Percentile-bootstrap intervals: resample pairs, recompute every
  // variation, replace the Wald CIs.  The poverty lines stay frozen at
  // their full-sample values (Z is treated as known).
  const std::size_t B = cfg.bootstrap;
  const std::size_t n = panel.n();
  const std::size_t ni = cfg.inequality.size();
  const std::size_t np = cfg.poverty.size();
  std::vector<std::vector<double>> ineq_draws(ni);
  std::vector<std::vector<double>> pov_draws(np);
  std::vector<std::vector<double>> ratio_draws(np * ni);
  std::vector<std::size_t> ineq_fail(ni, 0), pov_fail(np, 0), ratio_fail(np * ni, 0);

  std::mt19937_64 rng(cfg.seed);
  IncomePanel resample;
  resample.x1.resize(n);
  resample.x2.resize(n);
  for (std::size_t b = 0; b < B; ++b) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto idx = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(rng()) * n) >> 64);
      resample.x1[j] = panel.x1[idx];
      resample.x2[j] = panel.x2[idx];
    }
    std::vector<std::optional<double>> di(ni);
    std::vector<std::optional<double>> ratio_ok(ni);  // eps per inequality spec
    for (std::size_t i = 0; i < ni; ++i) {
      try {
        const auto e1 = inequality_eval(cfg.inequality[i], resample.x1, 1);
        const auto e2 = inequality_eval(cfg.inequality[i], resample.x2, 2);
        di[i] = e2.value - e1.value;
        ratio_ok[i] = ratio_epsilon(e1.value, e2.value);
        ineq_draws[i].push_back(*di[i]);
      } catch (const Error&) {
        ++ineq_fail[i];
      }
    }
    std::vector<std::optional<double>> dj(np);
    for (std::size_t p = 0; p < np; ++p) {
      try {
        dj[p] = delta_poverty(cfg.poverty[p], resample, z1, z2);
        pov_draws[p].push_back(*dj[p]);
      } catch (const DegenerateError&) {
        ++pov_fail[p];
      }
    }
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t i = 0; i < ni; ++i) {
        const std::size_t r = p * ni + i;
        if (!dj[p] || !di[i] || std::abs(*di[i]) <= *ratio_ok[i]) {
          ++ratio_fail[r];
          continue;
        }
        ratio_draws[r].push_back(*dj[p] / *di[i]);
      }
    }
  }

  auto too_many = [B](std::size_t failures) { return failures * 10 >= B; };
  for (std::size_t i = 0; i < ni; ++i) {
    if (too_many(ineq_fail[i]))
      throw DegenerateError(cfg.inequality[i].name + ": " + std::to_string(ineq_fail[i]) +
                            " of " + std::to_string(B) + " bootstrap resamples failed");
    result.inequality[i].ci = percentile_ci(ineq_draws[i], cfg.level);
  }
  for (std::size_t p = 0; p < np; ++p) {
    if (too_many(pov_fail[p]))
      throw DegenerateError(cfg.poverty[p].name + ": " + std::to_string(pov_fail[p]) +
                            " of " + std::to_string(B) + " bootstrap resamples failed");
    result.poverty[p].ci = percentile_ci(pov_draws[p], cfg.level);
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t i = 0; i < ni; ++i) {
      const std::size_t r = p * ni + i;
      JointReport& report = result.ratios[r];
      report.method = "bootstrap";
      report.ci_delta_i = result.inequality[i].ci;
      report.ci_delta_j = result.poverty[p].ci;
      if (report.ratio_degenerate) continue;
      if (too_many(ratio_fail[r])) {
        report.ratio_degenerate = true;
        report.classification = "degenerate";
        continue;
      }
      report.ci_ratio = percentile_ci(ratio_draws[r], cfg.level);
      report.classification = classify_variation(report);
    }
  }
  return result;
}

std::vector<OutputTable> result_tables(const PipelineResult& result) {
  std::vector<OutputTable> tables;

  OutputTable ineq;
  ineq.caption = "inequality-variations";
  ineq.columns = {"delta_i", "gamma_i", "ci_lo", "ci_hi"};
  for (const auto& row : result.inequality)
    ineq.rows.push_back({row.name, {row.delta, row.gamma, row.ci.lo, row.ci.hi}, ""});
  tables.push_back(std::move(ineq));

  OutputTable pov;
  pov.caption = "poverty-variations";
  pov.columns = {"delta_j", "gamma_j", "ci_lo", "ci_hi"};
  for (const auto& row : result.poverty)
    pov.rows.push_back({row.name, {row.delta, row.gamma, row.ci.lo, row.ci.hi}, ""});
  tables.push_back(std::move(pov));

  OutputTable ratios;
  ratios.caption = "ratios-by-poverty-family";
  ratios.columns = {"ratio", "gamma_ij", "gamma_ratio", "ci_lo", "ci_hi"};
  ratios.tag_column = "classification";
  for (const auto& r : result.ratios) {
    OutputTable::Row row;
    row.label = r.poverty_name + "/" + r.inequality_name;
    if (r.ratio_degenerate)
      row.cells = {std::nullopt, r.gamma_ij, std::nullopt, std::nullopt, std::nullopt};
    else
      row.cells = {r.ratio, r.gamma_ij, r.gamma_ratio, r.ci_ratio.lo, r.ci_ratio.hi};
    row.tag = r.classification;
    ratios.rows.push_back(std::move(row));
  }
  tables.push_back(std::move(ratios));
  return tables;
}

namespace {

void check_cells(const OutputTable& table) {
  for (const auto& row : table.rows)
    for (const auto& cell : row.cells)
      if (cell && !std::isfinite(*cell))
        throw NumericError("non-finite value in table '" + table.caption + "', row '" +
                           row.label + "'");
}

std::string render_text_table(const OutputTable& table) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : table.rows) {
    std::vector<std::string> out;
    out.push_back(row.label);
    for (const auto& c : row.cells) out.push_back(c ? fmt_sig(*c, 7) : "--");
    if (!table.tag_column.empty()) out.push_back(row.tag);
    cells.push_back(std::move(out));
  }
  std::vector<std::string> header;
  header.push_back("measure");
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  if (!table.tag_column.empty()) header.push_back(table.tag_column);

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  std::ostringstream out;
  out << "== " << table.caption << " ==\n";
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << row[c];
      // pad right except the last column
      if (c + 1 < row.size())
        out << std::string(width[c] - row[c].size(), ' ');
    }
    out << "\n";
  };
  emit(header);
  for (const auto& row : cells) emit(row);
  return out.str();
}

std::string render_csv_table(const OutputTable& table) {
  std::ostringstream out;
  out << "measure";
  for (const auto& c : table.columns) out << "," << c;
  if (!table.tag_column.empty()) out << "," << table.tag_column;
  out << "\n";
  for (const auto& row : table.rows) {
    out << row.label;
    for (const auto& cell : row.cells) out << "," << (cell ? fmt_sig(*cell, 9) : "");
    if (!table.tag_column.empty()) out << "," << row.tag;
    out << "\n";
  }
  return out.str();
}

ordered_json table_json(const OutputTable& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj;
    obj["measure"] = row.label;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (row.cells[c])
        obj[table.columns[c]] = *row.cells[c];
      else
        obj[table.columns[c]] = nullptr;
    }
    if (!table.tag_column.empty()) obj[table.tag_column] = row.tag;
    rows.push_back(std::move(obj));
  }
  ordered_json j;
  j["caption"] = table.caption;
  j["rows"] = std::move(rows);
  return j;
}

ordered_json ci_json(const ConfidenceInterval& ci) {
  return ordered_json::array({ci.lo, ci.hi});
}

ordered_json report_json(const JointReport& r) {
  ordered_json j;
  j["poverty"] = r.poverty_name;
  j["inequality"] = r.inequality_name;
  j["n"] = r.n;
  j["level"] = r.level;
  j["method"] = r.method;
  j["delta_i"] = r.delta_i;
  j["delta_j"] = r.delta_j;
  j["gamma_i"] = r.gamma_i;
  j["gamma_j"] = r.gamma_j.total;
  j["gamma_j_parts"] = {{"gamma1", r.gamma_j.gamma1},
                        {"g1", r.gamma_j.g1},
                        {"g2", r.gamma_j.g2},
                        {"g3", r.gamma_j.g3},
                        {"gamma3", r.gamma_j.gamma3}};
  j["gamma_ij"] = r.gamma_ij;
  j["ci_delta_i"] = ci_json(r.ci_delta_i);
  j["ci_delta_j"] = ci_json(r.ci_delta_j);
  j["degenerate"] = r.ratio_degenerate;
  if (r.ratio_degenerate) {
    j["ratio"] = nullptr;
    j["a"] = nullptr;
    j["b"] = nullptr;
    j["gamma_ratio"] = nullptr;
    j["ci_ratio"] = nullptr;
  } else {
    j["ratio"] = r.ratio;
    j["a"] = r.a;
    j["b"] = r.b;
    j["gamma_ratio"] = r.gamma_ratio;
    j["ci_ratio"] = ci_json(r.ci_ratio);
  }
  j["classification"] = r.classification;
  return j;
}

}  // namespace

std::string render_table(const OutputTable& table, OutputFormat format) {
  if (table.rows.empty()) throw ConfigError("refusing to render an empty table");
  check_cells(table);
  switch (format) {
    case OutputFormat::text:
      return render_text_table(table);
    case OutputFormat::csv:
      return render_csv_table(table);
    case OutputFormat::json:
      return table_json(table).dump(2) + "\n";
  }
  return "";
}

std::string render(const PipelineResult& result, OutputFormat format) {
  const std::vector<OutputTable> tables = result_tables(result);
  for (const auto& t : tables) check_cells(t);

  if (format == OutputFormat::text) {
    std::ostringstream out;
    out << "n = " << result.n << "   level = " << fmt_sig(result.level, 7)
        << "   method = " << result.method << "   grid = " << result.grid
        << "   z1 = " << fmt_sig(result.z1, 7) << "   z2 = " << fmt_sig(result.z2, 7)
        << "\n";
    for (const auto& t : tables) {
      if (t.rows.empty()) continue;
      out << "\n" << render_table(t, format);
    }
    return out.str();
  }

  if (format == OutputFormat::csv) {
    // One flat table so the document parses as a single CSV.
    std::ostringstream out;
    out << "table,measure,estimate,gamma,ci_lo,ci_hi,gamma_ij,classification\n";
    auto emit_measure = [&out](const char* tbl, const MeasureRow& row) {
      out << tbl << "," << row.name << "," << fmt_sig(row.delta, 9) << ","
          << fmt_sig(row.gamma, 9) << "," << fmt_sig(row.ci.lo, 9) << ","
          << fmt_sig(row.ci.hi, 9) << ",,\n";
    };
    for (const auto& row : result.inequality) emit_measure("inequality-variations", row);
    for (const auto& row : result.poverty) emit_measure("poverty-variations", row);
    for (const auto& r : result.ratios) {
      out << "ratios-by-poverty-family," << r.poverty_name << "/" << r.inequality_name << ",";
      if (r.ratio_degenerate)
        out << ",,,," << fmt_sig(r.gamma_ij, 9) << "," << r.classification << "\n";
      else
        out << fmt_sig(r.ratio, 9) << "," << fmt_sig(r.gamma_ratio, 9) << ","
            << fmt_sig(r.ci_ratio.lo, 9) << "," << fmt_sig(r.ci_ratio.hi, 9) << ","
            << fmt_sig(r.gamma_ij, 9) << "," << r.classification << "\n";
    }
    return out.str();
  }

  ordered_json j;
  j["n"] = result.n;
  j["level"] = result.level;
  j["method"] = result.method;
  j["grid"] = result.grid;
  j["bootstrap"] = result.bootstrap;
  j["seed"] = result.seed;
  j["z1"] = result.z1;
  j["z2"] = result.z2;
  j["inequality"] = ordered_json::array();
  for (const auto& row : result.inequality)
    j["inequality"].push_back({{"measure", row.name},
                               {"delta", row.delta},
                               {"gamma", row.gamma},
                               {"ci", ci_json(row.ci)}});
  j["poverty"] = ordered_json::array();
  for (const auto& row : result.poverty)
    j["poverty"].push_back({{"measure", row.name},
                            {"delta", row.delta},
                            {"gamma", row.gamma},
                            {"ci", ci_json(row.ci)}});
  j["ratios"] = ordered_json::array();
  for (const auto& r : result.ratios) j["ratios"].push_back(report_json(r));
  return j.dump(2) + "\n";
}

std::string render(const std::vector<CoverageResult>& results, OutputFormat format) {
  if (results.empty()) throw ConfigError("no coverage results to render");

  if (format == OutputFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
      ordered_json j;
      j["measure"] = r.measure;
      j["kind"] = r.kind;
      j["truth_source"] = r.truth_source;
      j["true_delta"] = r.true_delta;
      j["coverage"] = r.coverage;
      j["mean_ci_width"] = r.mean_ci_width;
      if (std::isnan(r.boot_analytic_ratio))
        j["boot_analytic_ratio"] = nullptr;
      else
        j["boot_analytic_ratio"] = r.boot_analytic_ratio;
      j["replicates"] = r.replicates;
      j["failures"] = r.failures;
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }

  OutputTable table;
  table.caption = "coverage";
  table.columns = {"true_delta", "coverage", "mean_ci_width", "boot_analytic_ratio",
                   "replicates", "failures"};
  table.tag_column = "truth_source";
  for (const auto& r : results) {
    OutputTable::Row row;
    row.label = r.measure;
    row.cells = {r.true_delta, r.coverage, r.mean_ci_width,
                 std::isnan(r.boot_analytic_ratio)
                     ? std::optional<double>{}
                     : std::optional<double>{r.boot_analytic_ratio},
                 static_cast<double>(r.replicates), static_cast<double>(r.failures)};
    row.tag = r.truth_source;
    table.rows.push_back(std::move(row));
  }
  return render_table(table, format);
}

McConfig load_mc_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment config '" + path + "'");
  McConfig cfg;
  bool z_fixed = false;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& what) {
    return ConfigError(path + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw bad("expected 'key = value', got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    auto num = [&]() {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw bad("cannot parse number '" + value + "' for key '" + key + "'");
      }
    };
    auto uint = [&]() {
      const double v = num();
      if (v < 0 || v != std::floor(v)) throw bad("'" + key + "' must be a nonnegative integer");
      return static_cast<std::uint64_t>(v);
    };
    if (key == "copula") {
      if (value == "independence") cfg.copula = CopulaKind::independence;
      else if (value == "clayton") cfg.copula = CopulaKind::clayton;
      else if (value == "comonotone") cfg.copula = CopulaKind::comonotone;
      else throw bad("unknown copula '" + value + "'");
    } else if (key == "theta") {
      cfg.theta = num();
    } else if (key == "marginal1") {
      cfg.marginal1 = Marginal::parse(value);
    } else if (key == "marginal2") {
      cfg.marginal2 = Marginal::parse(value);
    } else if (key == "n") {
      cfg.n = static_cast<std::size_t>(uint());
    } else if (key == "replicates") {
      cfg.replicates = static_cast<std::size_t>(uint());
    } else if (key == "seed") {
      cfg.seed = uint();
    } else if (key == "level") {
      cfg.level = num();
    } else if (key == "grid") {
      cfg.grid = static_cast<std::size_t>(uint());
    } else if (key == "bootstrap") {
      cfg.bootstrap = static_cast<std::size_t>(uint());
    } else if (key == "ineq") {
      for (const auto& token : split_list(value))
        cfg.inequality.push_back(InequalitySpec::parse(token));
    } else if (key == "pov") {
      for (const auto& token : split_list(value))
        cfg.poverty.push_back(PovertySpec::parse(token));
    } else if (key == "z1") {
      cfg.z.z1 = num();
      z_fixed = true;
    } else if (key == "z2") {
      cfg.z.z2 = num();
      z_fixed = true;
    } else if (key == "z_median_frac") {
      cfg.z.fraction = num();
      cfg.z.median_fraction = true;
    } else {
      throw bad("unknown key '" + key + "'");
    }
  }
  if (z_fixed) {
    cfg.z.median_fraction = false;
    if (!(cfg.z.z1 > 0.0) || !(cfg.z.z2 > 0.0))
      throw ConfigError(path + ": fixed poverty lines need both z1 and z2 > 0");
  }
  if (cfg.inequality.empty() && cfg.poverty.empty()) {
    cfg.inequality.push_back(InequalitySpec::theil());
    cfg.poverty.push_back(PovertySpec::fgt(1.0));
  }
  cfg.validate();
  return cfg;
}

}  // namespace propoor
