#include "fpsearch/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "fpsearch/format.hpp"

namespace fpsearch {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("csv table needs at least one column");
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw std::invalid_argument(fmt::format("csv row has {} cells, header has {}", cells.size(),
                                            columns_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(std::string_view experiment, std::uint64_t config_hash) const {
  std::string out =
      fmt::format("# fpsearch csv schema=1 experiment={} config={:016x}\n", experiment, config_hash);
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(columns_);
  for (const auto& row : rows_) emit(row);
  return out;
}

std::string csv_cell(double x) { return format_csv(x); }

std::string csv_cell(const std::optional<double>& x) { return x ? format_csv(*x) : std::string{}; }

std::string_view palette_color(std::size_t i) {
  static constexpr std::array<std::string_view, 8> colors = {
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % colors.size()];
}

namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 260.0;
constexpr double kLeft = 58.0;
constexpr double kRight = 14.0;
constexpr double kTop = 26.0;
constexpr double kBottom = 42.0;
constexpr double kTitleH = 30.0;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Scale {
  double lo;
  double hi;
  bool log;
  bool reversed;
  double pix_lo;
  double pix_hi;

  double operator()(double v) const {
    double a = log ? std::log10(v) : v;
    double t = (a - lo) / (hi - lo);
    if (reversed) t = 1.0 - t;
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

std::pair<double, double> data_range(const PlotPanel& p, bool is_x, const PlotAxis& axis) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : p.series) {
    for (double v : is_x ? s.x : s.y) {
      if (!std::isfinite(v) || (axis.log && v <= 0.0)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (axis.min) lo = *axis.min;
  if (axis.max) hi = *axis.max;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = axis.log ? 0.1 : 0.0;
    hi = 1.0;
  }
  if (axis.log) {
    lo = std::floor(std::log10(lo));
    hi = std::ceil(std::log10(hi));
    if (hi <= lo) hi = lo + 1.0;
    return {lo, hi};
  }
  if (hi <= lo) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

void render_panel(std::string& svg, const PlotPanel& p, double ox, double oy) {
  const auto [xlo, xhi] = data_range(p, true, p.x);
  const auto [ylo, yhi] = data_range(p, false, p.y);
  const double x0 = ox + kLeft;
  const double x1 = ox + kPanelW - kRight;
  const double y0 = oy + kPanelH - kBottom;
  const double y1 = oy + kTop;
  const Scale sx{xlo, xhi, p.x.log, p.x.reversed, x0, x1};
  const Scale sy{ylo, yhi, p.y.log, p.y.reversed, y0, y1};

  svg += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
      "stroke=\"#444\"/>\n",
      x0, y1, x1 - x0, y0 - y1);
  svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                     (x0 + x1) / 2, oy + 16, escape(p.title));
  svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
                     (x0 + x1) / 2, y0 + 34, escape(p.x.label));
  svg += fmt::format(
      "<text x=\"{0:.1f}\" y=\"{1:.1f}\" text-anchor=\"middle\" font-size=\"11\" "
      "transform=\"rotate(-90 {0:.1f} {1:.1f})\">{2}</text>\n",
      ox + 14, (y0 + y1) / 2, escape(p.y.label));

  auto tick_values = [](double lo, double hi, bool log) {
    if (!log) return linear_ticks(lo, hi);
    std::vector<double> t;
    for (double e = lo; e <= hi + 1e-9; e += 1.0) t.push_back(std::pow(10.0, e));
    return t;
  };
  for (double t : tick_values(xlo, xhi, p.x.log)) {
    const double px = sx(t);
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#444\"/>\n",
                       px, y0, y0 + 4);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"10\">{}</text>\n",
                       px, y0 + 15, fmt::format("{:g}", t));
  }
  for (double t : tick_values(ylo, yhi, p.y.log)) {
    const double py = sy(t);
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#444\"/>\n",
                       x0 - 4, py, x0);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" font-size=\"10\">{}</text>\n",
                       x0 - 6, py + 3, fmt::format("{:g}", t));
  }

  double legend_y = y1 + 12;
  for (const auto& s : p.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("plot series x/y length mismatch");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((p.x.log && s.x[i] <= 0.0) || (p.y.log && s.y[i] <= 0.0)) continue;
      pts.emplace_back(sx(s.x[i]), sy(s.y[i]));
    }
    if (s.line && pts.size() > 1) {
      std::string d;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        d += fmt::format("{}{:.2f},{:.2f}", i ? " L" : "M", pts[i].first, pts[i].second);
      }
      svg += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.4\"/>\n", d,
                         s.color);
    }
    if (s.markers) {
      for (const auto& [px, py] : pts) {
        svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px, py,
                           s.color);
      }
    }
    if (!s.label.empty()) {
      svg += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" fill=\"{}\">{}</text>\n", x0 + 6,
          legend_y, s.color, escape(s.label));
      legend_y += 12;
    }
  }
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels, int columns, std::string_view title) {
  if (columns < 1) throw std::invalid_argument("plot needs at least one column");
  const int ncols = std::min<int>(columns, std::max<std::size_t>(panels.size(), 1));
  const int nrows = static_cast<int>((panels.size() + columns - 1) / columns);
  const double width = ncols * kPanelW;
  const double height = kTitleH + std::max(nrows, 1) * kPanelH;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{1:.0f}\" "
      "viewBox=\"0 0 {0:.0f} {1:.0f}\" font-family=\"sans-serif\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      width, height, width / 2, escape(title));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double ox = static_cast<double>(i % columns) * kPanelW;
    const double oy = kTitleH + static_cast<double>(i / columns) * kPanelH;
    render_panel(svg, panels[i], ox, oy);
  }
  svg += "</svg>\n";
  return svg;
}

void write_output(const ExperimentOutput& out, const std::filesystem::path& dir) {
  for (const auto& file : out.files) {
    const auto path = dir / file.path;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    os << file.content;
    if (!os) throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace fpsearch
