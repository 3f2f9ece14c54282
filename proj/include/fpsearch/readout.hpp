#pragma once

// 1H readout of a two-spin register: crush, 90(y) on 1H, doublet lines.
//
// The 1H doublet has one line per 13C state. The line at +J/2 (leftmost
// on an NMR axis) belongs to 13C in |0>; its signed amplitude is the 1H
// population difference within that 13C manifold.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpsearch/fixed_point_search.hpp"
#include "fpsearch/pulse_sim.hpp"
#include "fpsearch/quantum_core.hpp"

namespace fpsearch {

struct Spectrum {
  double left_amp = 0.0;    // line at +J/2 (13C in |0>)
  double right_amp = 0.0;   // line at -J/2 (13C in |1>)
  double left_freq_hz = 0.0;
  double right_freq_hz = 0.0;
};

struct TracePoint {
  double freq_hz;
  double intensity;
};

/// Projection onto the diagonal (gradient dephasing of coherences).
DensityMatrix crush(const DensityMatrix& rho);

/// Requires a diagonal two-qubit density matrix; throws std::invalid_argument
/// otherwise.
Spectrum spectrum_from_populations(const DensityMatrix& rho_diag, const SpinSystem& sys);

/// Explicit readout: apply an ideal 90(y) pulse to 1H and measure the 1H
/// x-magnetization resolved by 13C state. Agrees with
/// spectrum_from_populations for diagonal input.
Spectrum observe_after_readout_pulse(const DensityMatrix& rho, const SpinSystem& sys);

/// (4P - 1)/3 for k = 1, 2P - 1 for k = 2.
double fractional_signal(double p, std::size_t k);
/// Inverse of fractional_signal.
double probability_from_signal(double f, std::size_t k);

/// Signed weights combining (left, right) into the oracle's expected signal.
struct ReadoutPattern {
  double left_weight;
  double right_weight;
};

/// Pattern for a two-qubit oracle with k = 1 or 2. Empty for the k = 2
/// functions whose ideal spectrum carries no signal ({00,10} and {01,11}).
std::optional<ReadoutPattern> readout_pattern(const OracleSpec& oracle);

/// Crushed density matrix of the ideal target preparation (r -> infinity).
DensityMatrix target_density(const OracleSpec& oracle);
Spectrum reference_spectrum(const OracleSpec& oracle, const SpinSystem& sys);

/// Combines the lines with the oracle's pattern, normalizes by the same
/// combination of `reference`, inverts fractional_signal and clamps to
/// [0, 1]. Empty for no-signal oracles. Throws when the reference
/// combination vanishes.
std::optional<double> estimate_probability(const Spectrum& spec, const Spectrum& reference,
                                           const OracleSpec& oracle);

/// Two Lorentzians at +-J/2 with FWHM 1/(pi T2_H) and peak heights equal to
/// the line amplitudes. The grid must be strictly monotone.
std::vector<TracePoint> lorentzian_trace(const Spectrum& spec, const SpinSystem& sys,
                                         std::span<const double> grid_hz);

/// Evenly spaced grid, i * step for i in [-half_points, half_points].
std::vector<double> symmetric_grid(double step_hz, int half_points);

/// Full chain: final state |psi> = V|00>, crushed, read out.
Spectrum spectrum_of_final_state(const UnitaryMatrix& v, const SpinSystem& sys);

struct ExperimentRecord {
  std::string oracle_id;
  int r = 0;
  PulseStyle style = PulseStyle::Naive;
  ErrorModel error;
  double p_sim = 0.0;
  std::optional<double> fractional;
  std::optional<double> p_est;
};

}  // namespace fpsearch
