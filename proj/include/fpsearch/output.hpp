#pragma once

// Experiment artifacts: CSV tables with a one-line provenance header, and
// small self-contained SVG plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpsearch {

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  /// Throws std::invalid_argument if the cell count differs from the header.
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& data() const { return rows_; }

  /// "# fpsearch csv schema=1 experiment=<name> config=<16 hex>" then the
  /// header and rows, LF line endings.
  std::string render(std::string_view experiment, std::uint64_t config_hash) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_cell(double x);
std::string csv_cell(const std::optional<double>& x);  // empty when absent

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool line = true;
  bool markers = false;
  std::string color = "#1f77b4";
};

struct PlotAxis {
  std::string label;
  bool log = false;
  bool reversed = false;
  std::optional<double> min;
  std::optional<double> max;
};

struct PlotPanel {
  std::string title;
  PlotAxis x;
  PlotAxis y;
  std::vector<PlotSeries> series;
};

/// Lays panels out row-major in `columns` columns.
std::string render_svg(const std::vector<PlotPanel>& panels, int columns, std::string_view title);

/// Fixed palette, cycled.
std::string_view palette_color(std::size_t i);

struct OutputFile {
  std::string path;  // relative to the output directory
  std::string content;
};

struct ExperimentOutput {
  std::vector<OutputFile> files;
};

/// Writes every file below `dir`, creating directories as needed.
void write_output(const ExperimentOutput& out, const std::filesystem::path& dir);

}  // namespace fpsearch
