#pragma once

// Invariant suite behind `fpsearch verify`.

#include <string>
#include <vector>

#include "fpsearch/pulse_sim.hpp"

namespace fpsearch {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<CheckResult> run_invariant_suite(const SpinSystem& sys = {});

}  // namespace fpsearch
