#include "fpsearch/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fpsearch {

namespace {

void check_two_qubit(std::size_t dim) {
  if (dim != 4) throw std::invalid_argument("readout is defined for the two-spin register");
}

}  // namespace

DensityMatrix crush(const DensityMatrix& rho) { return diagonal_part(rho); }

Spectrum spectrum_from_populations(const DensityMatrix& rho_diag, const SpinSystem& sys) {
  check_two_qubit(rho_diag.dim());
  if (!rho_diag.is_diagonal(kAlgebraTol)) {
    throw std::invalid_argument("spectrum_from_populations needs a crushed (diagonal) state");
  }
  Spectrum s;
  s.left_amp = rho_diag.population(0) - rho_diag.population(2);
  s.right_amp = rho_diag.population(1) - rho_diag.population(3);
  s.left_freq_hz = sys.coupling_hz / 2.0;
  s.right_freq_hz = -sys.coupling_hz / 2.0;
  return s;
}

Spectrum observe_after_readout_pulse(const DensityMatrix& rho, const SpinSystem& sys) {
  check_two_qubit(rho.dim());
  const UnitaryMatrix pulse = tensor_product(rotation_y(std::numbers::pi / 2.0),
                                             UnitaryMatrix::identity(2));
  const CMatrix after = conjugate(pulse, rho).matrix();
  CMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  CMatrix c0 = CMatrix::Zero(2, 2);
  CMatrix c1 = CMatrix::Zero(2, 2);
  c0(0, 0) = 1.0;
  c1(1, 1) = 1.0;
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(4, 4);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    }
    return out;
  };
  Spectrum s;
  s.left_amp = (after * kron(sx, c0)).trace().real();
  s.right_amp = (after * kron(sx, c1)).trace().real();
  s.left_freq_hz = sys.coupling_hz / 2.0;
  s.right_freq_hz = -sys.coupling_hz / 2.0;
  return s;
}

double fractional_signal(double p, std::size_t k) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  if (k == 1) return (4.0 * p - 1.0) / 3.0;
  if (k == 2) return 2.0 * p - 1.0;
  throw std::invalid_argument("fractional signal is defined for k = 1 or k = 2");
}

double probability_from_signal(double f, std::size_t k) {
  if (!std::isfinite(f)) throw std::invalid_argument("fractional signal must be finite");
  if (k == 1) return (3.0 * f + 1.0) / 4.0;
  if (k == 2) return (f + 1.0) / 2.0;
  throw std::invalid_argument("fractional signal is defined for k = 1 or k = 2");
}

std::optional<ReadoutPattern> readout_pattern(const OracleSpec& oracle) {
  check_two_qubit(oracle.dim());
  if (oracle.k() == 1) {
    const std::size_t s = oracle.matching().front();
    const double sign = (s >> 1) == 0 ? 1.0 : -1.0;
    if ((s & 1U) == 0) return ReadoutPattern{sign, 0.0};
    return ReadoutPattern{0.0, sign};
  }
  if (oracle.k() == 2) {
    double left = 0.0;
    double right = 0.0;
    for (auto x : oracle.matching()) {
      const double sign = (x >> 1) == 0 ? 1.0 : -1.0;
      ((x & 1U) == 0 ? left : right) += sign;
    }
    if (left == 0.0 && right == 0.0) return std::nullopt;
    return ReadoutPattern{left, right};
  }
  throw std::invalid_argument("readout calibration is defined for k = 1 or k = 2");
}

DensityMatrix target_density(const OracleSpec& oracle) {
  return crush(pure_density(target_state(oracle)));
}

Spectrum reference_spectrum(const OracleSpec& oracle, const SpinSystem& sys) {
  return spectrum_from_populations(target_density(oracle), sys);
}

std::optional<double> estimate_probability(const Spectrum& spec, const Spectrum& reference,
                                           const OracleSpec& oracle) {
  const auto pattern = readout_pattern(oracle);
  if (!pattern) return std::nullopt;
  const double signal = pattern->left_weight * spec.left_amp + pattern->right_weight * spec.right_amp;
  const double ref =
      pattern->left_weight * reference.left_amp + pattern->right_weight * reference.right_amp;
  if (std::abs(ref) < kAlgebraTol) {
    throw std::invalid_argument("reference spectrum has no intensity in the expected pattern");
  }
  return std::clamp(probability_from_signal(signal / ref, oracle.k()), 0.0, 1.0);
}

std::vector<TracePoint> lorentzian_trace(const Spectrum& spec, const SpinSystem& sys,
                                         std::span<const double> grid_hz) {
  sys.validate();
  for (std::size_t i = 1; i < grid_hz.size(); ++i) {
    if (!(grid_hz[i] > grid_hz[i - 1])) {
      throw std::invalid_argument("frequency grid must be strictly increasing");
    }
  }
  const double half_width = 1.0 / (2.0 * std::numbers::pi * sys.t2_h_s);
  const double hw2 = half_width * half_width;
  std::vector<TracePoint> out;
  out.reserve(grid_hz.size());
  for (double f : grid_hz) {
    const double dl = f - spec.left_freq_hz;
    const double dr = f - spec.right_freq_hz;
    out.push_back({f, spec.left_amp * hw2 / (dl * dl + hw2) + spec.right_amp * hw2 / (dr * dr + hw2)});
  }
  return out;
}

std::vector<double> symmetric_grid(double step_hz, int half_points) {
  if (!(step_hz > 0.0) || half_points < 1) throw std::invalid_argument("bad grid specification");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * half_points + 1));
  for (int i = -half_points; i <= half_points; ++i) grid.push_back(i * step_hz);
  return grid;
}

Spectrum spectrum_of_final_state(const UnitaryMatrix& v, const SpinSystem& sys) {
  check_two_qubit(v.dim());
  const StateVector psi = apply(v, StateVector::basis(2, 0));
  return spectrum_from_populations(crush(pure_density(psi)), sys);
}

}  // namespace fpsearch
