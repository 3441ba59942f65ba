#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "propoor/joint.hpp"
#include "propoor/mc.hpp"

namespace propoor {

enum class OutputFormat { text, csv, json };

OutputFormat parse_format(const std::string& token);

// Everything one estimation run needs, straight from flags/env.
struct RunConfig {
  std::string data1;   // one income per line, period 1
  std::string data2;   // one income per line, period 2
  std::string paired;  // alternative: single two-column file
  std::vector<InequalitySpec> inequality;
  std::vector<PovertySpec> poverty;
  ZPolicy z;  // defaults to half the sample median
  double level = 0.95;
  std::size_t grid = 256;
  OutputFormat format = OutputFormat::text;
  std::size_t bootstrap = 0;  // >0 switches CIs to percentile bootstrap
  std::uint64_t seed = 0;

  void validate() const;
};

IncomePanel load_panel(const std::string& path1, const std::string& path2);
IncomePanel load_paired(const std::string& path);

struct MeasureRow {
  std::string name;
  double delta = 0;
  double gamma = 0;
  ConfidenceInterval ci;
};

struct PipelineResult {
  std::size_t n = 0;
  double level = 0.95;
  std::string method = "wald";
  std::size_t grid = 256;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;
  double z1 = 0;
  double z2 = 0;
  std::vector<MeasureRow> inequality;
  std::vector<MeasureRow> poverty;
  std::vector<JointReport> ratios;  // poverty-major order
};

PipelineResult run_pipeline(const RunConfig& cfg);

// Paper-shaped table: label column, numeric cells (absent cells allowed
// for degenerate rows), and an optional trailing text column.
struct OutputTable {
  std::string caption;  // inequality-variations | poverty-variations |
                        // ratios-by-poverty-family
  std::vector<std::string> columns;
  std::string tag_column;  // empty = no text column
  struct Row {
    std::string label;
    std::vector<std::optional<double>> cells;
    std::string tag;
  };
  std::vector<Row> rows;
};

std::vector<OutputTable> result_tables(const PipelineResult& result);

// text: aligned, 7 significant digits; csv/json: 9 significant digits.
// Throws on any non-finite cell (the pipeline should have failed earlier).
std::string render_table(const OutputTable& table, OutputFormat format);

// Whole-run document; json carries the full report schema.
std::string render(const PipelineResult& result, OutputFormat format);
std::string render(const std::vector<CoverageResult>& results, OutputFormat format);

// Plain "key = value" experiment file, '#' comments allowed.
McConfig load_mc_config(const std::string& path);

}  // namespace propoor
