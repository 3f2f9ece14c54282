#pragma once

// Experiment runners. Each returns its files in memory; the CLI writes them.

#include <span>
#include <vector>

#include "fpsearch/config.hpp"
#include "fpsearch/output.hpp"
#include "fpsearch/pulse_sim.hpp"

namespace fpsearch {

/// Final-state success probability of the compiled pulse sequence for V_r.
double pulse_success(const OracleSpec& oracle, int r, PulseStyle style, const ErrorModel& err,
                     const SpinSystem& sys, int max_order = kDefaultMaxOrder);

struct Bb1Point {
  double eps;
  double infidelity_naive;
  double infidelity_bb1;
  double p0_naive;
  double p0_bb1;
};

/// Log-spaced eps grid, inclusive at both ends.
std::vector<double> log_grid(double lo, double hi, int points);

/// 90(y) pulse on 1H, alone and BB1-expanded, under an rf scale error eps;
/// r = 0 success for oracle {11} with the error on every pulse.
Bb1Point bb1_point(double eps, const SpinSystem& sys);

/// Least-squares slope of log10(y) against log10(x). Requires positive data.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// |(1 - p_next) - (1 - p)^3|
double cube_residual(double p, double p_next);

ExperimentOutput run_table1(const ExperimentConfig& config);
ExperimentOutput run_curves(const ExperimentConfig& config);
ExperimentOutput run_robustness(const ExperimentConfig& config);
ExperimentOutput run_bb1_scaling(const ExperimentConfig& config);
ExperimentOutput run_spectra(const ExperimentConfig& config);

ExperimentOutput run_experiment(const ExperimentConfig& config);

}  // namespace fpsearch
