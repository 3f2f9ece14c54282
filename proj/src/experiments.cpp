#include "fpsearch/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "fpsearch/format.hpp"
#include "fpsearch/readout.hpp"

namespace fpsearch {

namespace {

constexpr double kTableTol = 1e-12;

std::string scope_name(RfErrorScope s) { return s == RfErrorScope::AllPulses ? "all" : "u-gates"; }

ErrorModel error_point(double eps, double delta_j, RfErrorScope scope) {
  ErrorModel e = ErrorModel::rf(eps, scope);
  e.delta_j = delta_j;
  e.validate();
  return e;
}

// Compiled sequences are reused across error points.
class SequenceCache {
 public:
  explicit SequenceCache(const SpinSystem& sys, int max_order) : sys_(sys), max_(max_order) {}

  const PulseSequence& get(const OracleSpec& oracle, int r, PulseStyle style) {
    auto key = std::make_tuple(oracle.id(), r, style);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, compile_algorithm(RecursionOrder(r, max_), oracle, sys_, style)).first;
    }
    return it->second;
  }

 private:
  SpinSystem sys_;
  int max_;
  std::map<std::tuple<std::string, int, PulseStyle>, PulseSequence> cache_;
};

std::string file_stem(const ExperimentConfig& c) {
  std::string s(experiment_name(c.kind));
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

std::string render(const CsvTable& t, const ExperimentConfig& c) {
  return t.render(experiment_name(c.kind), c.hash());
}

}  // namespace

double pulse_success(const OracleSpec& oracle, int r, PulseStyle style, const ErrorModel& err,
                     const SpinSystem& sys, int max_order) {
  const PulseSequence seq = compile_algorithm(RecursionOrder(r, max_order), oracle, sys, style);
  return success_probability(sequence_unitary(seq, sys, err), oracle);
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw std::invalid_argument("bad log grid");
  std::vector<double> out;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < points; ++i) {
    out.push_back(i == points - 1 ? hi : std::pow(10.0, a + (b - a) * i / (points - 1)));
  }
  out.front() = lo;
  return out;
}

Bb1Point bb1_point(double eps, const SpinSystem& sys) {
  const ErrorModel err = ErrorModel::rf(eps);
  const ErrorModel none;
  PulseSequence naive;
  naive.push_back(PulseEvent::rf(Targets::H, std::numbers::pi / 2.0, std::numbers::pi / 2.0));
  const PulseSequence bb1 = to_bb1(naive);
  const UnitaryMatrix ideal = sequence_unitary(naive, sys, none);
  const OracleSpec oracle(2, {"11"}, kFixedPointPhase);
  return Bb1Point{
      eps,
      gate_infidelity(sequence_unitary(naive, sys, err), ideal),
      gate_infidelity(sequence_unitary(bb1, sys, err), ideal),
      pulse_success(oracle, 0, PulseStyle::Naive, err, sys),
      pulse_success(oracle, 0, PulseStyle::Bb1, err, sys),
  };
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("log-log slope needs positive data");
    const double lx = std::log10(x[i]);
    const double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("log-log slope needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

double cube_residual(double p, double p_next) {
  const double q = 1.0 - p;
  return std::abs((1.0 - p_next) - q * q * q);
}

ExperimentOutput run_table1(const ExperimentConfig& config) {
  const OracleSpec k1(2, {"11"}, kFixedPointPhase);
  const OracleSpec k2(2, {"00", "01"}, kFixedPointPhase);
  const OracleSpec origin = OracleSpec::origin(2, kFixedPointPhase);
  CsvTable table({"r", "P_k1_closed", "P_k1_sim", "P_k2_closed", "P_k2_sim", "Q"});
  for (int r = 0; r <= config.order_max; ++r) {
    const RecursionOrder order(r, config.order_cap);
    const auto gates = expand_gate_list(order);
    const double c1 = closed_form_success(order, 1, 2);
    const double c2 = closed_form_success(order, 2, 2);
    const double s1 = success_probability(gate_list_unitary(gates, k1, origin), k1);
    const double s2 = success_probability(gate_list_unitary(gates, k2, origin), k2);
    if (std::abs(c1 - s1) > kTableTol || std::abs(c2 - s2) > kTableTol) {
      throw InvariantViolation(
          fmt::format("closed form and gate-level simulation disagree at r = {}", r),
          static_cast<std::size_t>(r));
    }
    table.add_row({std::to_string(r), csv_cell(c1), csv_cell(s1), csv_cell(c2), csv_cell(s2),
                   std::to_string(query_count(order))});
  }
  return {{{"table1.csv", render(table, config)}}};
}

ExperimentOutput run_curves(const ExperimentConfig& config) {
  const std::string stem = file_stem(config);
  SequenceCache cache(config.system, config.order_cap);
  CsvTable table({"oracle", "r", "style", "eps", "delta_j", "P_pulse", "P_est", "F", "P_closed"});
  std::vector<PlotPanel> panels;

  for (auto style : config.styles) {
    for (double eps : config.eps) {
      for (double dj : config.delta_j) {
        const ErrorModel err = error_point(eps, dj, config.scope);
        PlotPanel panel;
        panel.title = fmt::format("{} eps={:g} dJ={:g}", style_name(style), eps, dj);
        panel.x = {"r", false, false, config.order_min, config.order_max};
        panel.y = {"P", false, false, 0.0, 1.0};
        PlotSeries smooth{"closed form", {}, {}, true, false, "#444444"};
        const double miss = 1.0 - static_cast<double>(config.k) / 4.0;
        for (int i = 0; i <= 200; ++i) {
          const double x = config.order_min + (config.order_max - config.order_min) * i / 200.0;
          smooth.x.push_back(x);
          smooth.y.push_back(1.0 - std::pow(miss, std::pow(3.0, x)));
        }
        panel.series.push_back(smooth);
        for (std::size_t oi = 0; oi < config.oracles.size(); ++oi) {
          const auto& oracle = config.oracles[oi];
          PlotSeries pts{oracle.id(), {}, {}, false, true, std::string(palette_color(oi))};
          const Spectrum ref = reference_spectrum(oracle, config.system);
          for (int r = config.order_min; r <= config.order_max; ++r) {
            const auto& seq = cache.get(oracle, r, style);
            const UnitaryMatrix v = sequence_unitary(seq, config.system, err);
            const double p = success_probability(v, oracle);
            const auto est =
                estimate_probability(spectrum_of_final_state(v, config.system), ref, oracle);
            std::optional<double> f;
            if (est) f = fractional_signal(*est, oracle.k());
            const double closed =
                closed_form_success(RecursionOrder(r, config.order_cap), oracle.k(), 2);
            table.add_row({oracle.id(), std::to_string(r), std::string(style_name(style)),
                           csv_cell(eps), csv_cell(dj), csv_cell(p), csv_cell(est), csv_cell(f),
                           csv_cell(closed)});
            pts.x.push_back(r);
            pts.y.push_back(p);
          }
          panel.series.push_back(pts);
        }
        panels.push_back(panel);
      }
    }
  }
  const int cols = static_cast<int>(std::min<std::size_t>(panels.size(), 3));
  return {{{stem + ".csv", render(table, config)},
           {stem + ".svg", render_svg(panels, cols, fmt::format("{} success probability", stem))}}};
}

ExperimentOutput run_robustness(const ExperimentConfig& config) {
  SequenceCache cache(config.system, config.order_cap);
  CsvTable table({"oracle", "style", "eps", "delta_j", "r", "P", "cube_residual"});
  // worst residual over oracles and r, per (style, delta_j) series and eps
  std::map<std::pair<PulseStyle, double>, std::vector<double>> worst;

  for (std::size_t ei = 0; ei < config.eps.size(); ++ei) {
    const double eps = config.eps[ei];
    for (double dj : config.delta_j) {
      const ErrorModel err = error_point(eps, dj, config.scope);
      for (const auto& oracle : config.oracles) {
        for (auto style : config.styles) {
          double prev = 0.0;
          double max_res = 0.0;
          for (int r = config.order_min; r <= config.order_max; ++r) {
            const auto& seq = cache.get(oracle, r, style);
            const double p = success_probability(sequence_unitary(seq, config.system, err), oracle);
            std::optional<double> res;
            if (r > config.order_min) {
              res = cube_residual(prev, p);
              max_res = std::max(max_res, *res);
            }
            table.add_row({oracle.id(), std::string(style_name(style)), csv_cell(eps), csv_cell(dj),
                           std::to_string(r), csv_cell(p), csv_cell(res)});
            prev = p;
          }
          auto& w = worst[{style, dj}];
          w.resize(config.eps.size(), 0.0);
          w[ei] = std::max(w[ei], max_res);
        }
      }
    }
  }

  PlotPanel panel;
  panel.title = fmt::format("worst cube residual, rf error scope: {}", scope_name(config.scope));
  panel.x = {"eps", false, false, std::nullopt, std::nullopt};
  panel.y = {"residual", true, false, std::nullopt, std::nullopt};
  std::size_t ci = 0;
  for (const auto& [key, values] : worst) {
    PlotSeries s{fmt::format("{} dJ={:g}", style_name(key.first), key.second), {}, {}, true, true,
                 std::string(palette_color(ci++))};
    for (std::size_t i = 0; i < values.size(); ++i) {
      s.x.push_back(config.eps[i]);
      s.y.push_back(std::max(values[i], 1e-17));
    }
    panel.series.push_back(s);
  }
  return {{{"robustness.csv", render(table, config)},
           {"robustness.svg", render_svg({panel}, 1, "robustness")}}};
}

ExperimentOutput run_bb1_scaling(const ExperimentConfig& config) {
  const auto grid = log_grid(config.bb1_eps_min, config.bb1_eps_max, config.bb1_points);
  CsvTable table({"eps", "infidelity_naive", "infidelity_bb1", "P0_naive", "P0_bb1"});
  std::vector<double> naive, bb1;
  const Bb1Point zero = bb1_point(0.0, config.system);
  table.add_row({csv_cell(0.0), csv_cell(zero.infidelity_naive), csv_cell(zero.infidelity_bb1),
                 csv_cell(zero.p0_naive), csv_cell(zero.p0_bb1)});
  for (double eps : grid) {
    const Bb1Point p = bb1_point(eps, config.system);
    naive.push_back(p.infidelity_naive);
    bb1.push_back(p.infidelity_bb1);
    table.add_row({csv_cell(eps), csv_cell(p.infidelity_naive), csv_cell(p.infidelity_bb1),
                   csv_cell(p.p0_naive), csv_cell(p.p0_bb1)});
  }
  CsvTable slopes({"style", "slope", "eps_min", "eps_max", "points"});
  const double s_naive = loglog_slope(grid, naive);
  const double s_bb1 = loglog_slope(grid, bb1);
  for (auto [name, s] : {std::pair{"naive", s_naive}, std::pair{"bb1", s_bb1}}) {
    slopes.add_row({name, csv_cell(s), csv_cell(grid.front()), csv_cell(grid.back()),
                    std::to_string(grid.size())});
  }

  PlotPanel panel;
  panel.title = fmt::format("90 deg pulse infidelity (slopes {:.3f}, {:.3f})", s_naive, s_bb1);
  panel.x = {"eps", true, false, std::nullopt, std::nullopt};
  panel.y = {"infidelity", true, false, std::nullopt, std::nullopt};
  panel.series.push_back({"naive", grid, naive, true, true, std::string(palette_color(0))});
  panel.series.push_back({"BB1", grid, bb1, true, true, std::string(palette_color(1))});
  return {{{"bb1_scaling.csv", render(table, config)},
           {"bb1_slopes.csv", render(slopes, config)},
           {"bb1_scaling.svg", render_svg({panel}, 1, "BB1 scaling")}}};
}

ExperimentOutput run_spectra(const ExperimentConfig& config) {
  const auto& sys = config.system;
  const ErrorModel err = error_point(config.eps.front(), config.delta_j.front(), config.scope);
  const PulseStyle style = config.styles.front();
  const auto grid = symmetric_grid(config.spectra_step_hz, config.spectra_half_points);

  struct Panel {
    std::string oracle;
    std::string r;
    Spectrum spec;
    std::vector<TracePoint> trace;
  };
  std::vector<Panel> panels;
  ExperimentOutput out;
  CsvTable lines({"oracle", "r", "left_freq_hz", "left_amp", "right_freq_hz", "right_amp"});

  for (const auto& oracle : config.oracles) {
    std::vector<std::pair<std::string, Spectrum>> specs;
    for (int r = 0; r <= config.order_max; ++r) {
      const auto seq = compile_algorithm(RecursionOrder(r, config.order_cap), oracle, sys, style);
      specs.emplace_back(std::to_string(r), spectrum_of_final_state(sequence_unitary(seq, sys, err), sys));
    }
    specs.emplace_back("inf", reference_spectrum(oracle, sys));
    for (auto& [r, spec] : specs) {
      lines.add_row({oracle.id(), r, csv_cell(spec.left_freq_hz), csv_cell(spec.left_amp),
                     csv_cell(spec.right_freq_hz), csv_cell(spec.right_amp)});
      auto trace = lorentzian_trace(spec, sys, grid);
      std::string text = "# freq_hz intensity\n";
      for (const auto& pt : trace) {
        text += format_csv(pt.freq_hz) + " " + format_csv(pt.intensity) + "\n";
      }
      out.files.push_back({fmt::format("spectra/{}_r{}.txt", oracle.id(), r), std::move(text)});
      panels.push_back({oracle.id(), r, spec, std::move(trace)});
    }
  }

  double lo = 0.0, hi = 0.0;
  for (const auto& p : panels) {
    for (const auto& pt : p.trace) {
      lo = std::min(lo, pt.intensity);
      hi = std::max(hi, pt.intensity);
    }
  }
  if (hi - lo < 1e-12) {
    lo = -1.0;
    hi = 1.0;
  }
  const double line_window = 4.0;  // Hz around each line kept at full resolution
  std::vector<PlotPanel> plot;
  for (const auto& p : panels) {
    PlotPanel panel;
    panel.title = fmt::format("{} r={}", p.oracle, p.r);
    panel.x = {"Hz", false, true, grid.front(), grid.back()};
    panel.y = {"", false, false, lo, hi};
    PlotSeries s{"", {}, {}, true, false, "#000000"};
    for (std::size_t i = 0; i < p.trace.size(); ++i) {
      const double f = p.trace[i].freq_hz;
      const bool near = std::abs(f - p.spec.left_freq_hz) < line_window ||
                        std::abs(f - p.spec.right_freq_hz) < line_window;
      if (near || i % 20 == 0 || i + 1 == p.trace.size()) {
        s.x.push_back(f);
        s.y.push_back(p.trace[i].intensity);
      }
    }
    panel.series.push_back(std::move(s));
    plot.push_back(std::move(panel));
  }
  const int cols = config.order_max + 2;
  out.files.push_back({"spectra_lines.csv", render(lines, config)});
  out.files.push_back({"spectra.svg", render_svg(plot, cols, "1H spectra")});
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Table1: return run_table1(config);
    case ExperimentKind::K1Curves:
    case ExperimentKind::K2Curves: return run_curves(config);
    case ExperimentKind::Robustness: return run_robustness(config);
    case ExperimentKind::Bb1Scaling: return run_bb1_scaling(config);
    case ExperimentKind::Spectra: return run_spectra(config);
  }
  throw std::logic_error("unhandled experiment kind");
}

}  // namespace fpsearch
