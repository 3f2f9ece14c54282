#pragma once

// Experiment configuration: flat INI text whose [section] key = value pairs
// become dotted keys ("error.eps"). Unknown keys, and keys that do not
// apply to the selected experiment, are errors.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpsearch/fixed_point_search.hpp"
#include "fpsearch/pulse_sim.hpp"

namespace fpsearch {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Table1, K1Curves, K2Curves, Robustness, Bb1Scaling, Spectra };

struct ExperimentInfo {
  ExperimentKind kind;
  std::string_view name;
  std::string_view summary;
};

const std::vector<ExperimentInfo>& experiment_catalog();
std::string_view experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);  // throws ConfigError

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Table1;
  std::size_t k = 1;
  double phase = kFixedPointPhase;
  std::vector<OracleSpec> oracles;
  int order_min = 0;
  int order_max = 3;
  int order_cap = kDefaultMaxOrder;
  std::vector<PulseStyle> styles{PulseStyle::Naive};
  std::vector<double> eps{0.0};
  std::vector<double> delta_j{0.0};
  RfErrorScope scope = RfErrorScope::AllPulses;
  SpinSystem system;
  double bb1_eps_min = 1e-3;
  double bb1_eps_max = 1e-2;
  int bb1_points = 8;
  double spectra_step_hz = 0.05;
  int spectra_half_points = 3000;
  std::string output_dir = "out";

  /// Effective settings, one "key = value" per line in fixed order. The
  /// output directory is excluded so results do not depend on it.
  std::string canonical() const;
  /// FNV-1a 64 of canonical().
  std::uint64_t hash() const;
};

/// Parses INI text for `kind`, then applies "key=value" overrides.
ExperimentConfig parse_config(ExperimentKind kind, std::string_view ini_text,
                              const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(ExperimentKind kind, const std::string& path,
                             const std::vector<std::string>& overrides = {});

/// Keys accepted for an experiment, sorted.
std::vector<std::string> applicable_keys(ExperimentKind kind);

}  // namespace fpsearch
