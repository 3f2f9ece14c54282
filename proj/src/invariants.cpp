#include "fpsearch/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "fpsearch/experiments.hpp"
#include "fpsearch/readout.hpp"

namespace fpsearch {

namespace {

std::vector<OracleSpec> oracles_up_to_k(std::size_t kmax) {
  std::vector<OracleSpec> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    auto batch = OracleSpec::all_with_k(2, k, kFixedPointPhase);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

// Each check returns (worst deviation, tolerance).
using Check = std::function<std::pair<double, double>()>;

CheckResult run_check(const std::string& name, const Check& check) {
  try {
    const auto [worst, tol] = check();
    return {name, worst <= tol, fmt::format("worst {:.3e} (tol {:.0e})", worst, tol)};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const SpinSystem& sys) {
  const OracleSpec origin = OracleSpec::origin(2, kFixedPointPhase);
  std::vector<CheckResult> results;

  results.push_back(run_check("closed form vs gate level, r <= 4", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(3)) {
      for (int r = 0; r <= 4; ++r) {
        const RecursionOrder order(r);
        const double sim = success_probability(recursive_operator(order, o, origin), o);
        worst = std::max(worst, std::abs(sim - closed_form_success(order, o.k(), 2)));
      }
    }
    return std::pair{worst, 1e-12};
  }));

  results.push_back(run_check("cube law at gate level, r <= 3", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(3)) {
      double prev = success_probability(recursive_operator(RecursionOrder(0), o, origin), o);
      for (int r = 1; r <= 4; ++r) {
        const double p = success_probability(recursive_operator(RecursionOrder(r), o, origin), o);
        worst = std::max(worst, cube_residual(prev, p));
        prev = p;
      }
    }
    return std::pair{worst, 1e-12};
  }));

  results.push_back(run_check("gate list expansion matches recursion, r <= 3", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(2)) {
      for (int r = 0; r <= 3; ++r) {
        const RecursionOrder order(r);
        worst = std::max(worst, global_phase_distance(gate_list_unitary(expand_gate_list(order), o, origin),
                                                      recursive_operator(order, o, origin)));
      }
    }
    return std::pair{worst, 1e-12};
  }));

  results.push_back(run_check("compiled pulses match V_r, both styles, r <= 3", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(2)) {
      for (int r = 0; r <= 3; ++r) {
        const RecursionOrder order(r);
        const UnitaryMatrix ideal = recursive_operator(order, o, origin);
        for (auto style : {PulseStyle::Naive, PulseStyle::Bb1}) {
          const auto seq = compile_algorithm(order, o, sys, style);
          worst = std::max(worst, global_phase_distance(sequence_unitary(seq, sys, {}), ideal));
        }
      }
    }
    return std::pair{worst, 1e-10};
  }));

  results.push_back(run_check("cube law under U-gate rf error, r <= 2", [&] {
    double worst = 0.0;
    for (double eps : {-0.1, -0.05, -0.02, 0.02, 0.05, 0.1}) {
      const ErrorModel err = ErrorModel::rf(eps, RfErrorScope::UGatesOnly);
      for (const auto& o : oracles_up_to_k(1)) {
        double prev = pulse_success(o, 0, PulseStyle::Naive, err, sys);
        for (int r = 1; r <= 3; ++r) {
          const double p = pulse_success(o, r, PulseStyle::Naive, err, sys);
          worst = std::max(worst, cube_residual(prev, p));
          prev = p;
        }
      }
    }
    return std::pair{worst, 1e-9};
  }));

  results.push_back(run_check("readout round trip, r <= 3", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(2)) {
      const Spectrum ref = reference_spectrum(o, sys);
      for (int r = 0; r <= 3; ++r) {
        const RecursionOrder order(r);
        const auto est =
            estimate_probability(spectrum_of_final_state(recursive_operator(order, o, origin), sys), ref, o);
        if (!est) continue;
        worst = std::max(worst, std::abs(*est - closed_form_success(order, o.k(), 2)));
      }
    }
    return std::pair{worst, 1e-9};
  }));

  results.push_back(run_check("complement with negated phase equals oracle", [&] {
    double worst = 0.0;
    for (const auto& o : oracles_up_to_k(3)) {
      worst = std::max(worst, global_phase_distance(phase_oracle(o.complement().inverse()), phase_oracle(o)));
    }
    const OracleSpec all(2, {"00", "01", "10", "11"}, kFixedPointPhase);
    worst = std::max(worst, global_phase_distance(phase_oracle(all), UnitaryMatrix::identity(4)));
    return std::pair{worst, 1e-12};
  }));

  results.push_back(run_check("BB1 and naive 90 pulses exact at eps = 0", [&] {
    const Bb1Point p = bb1_point(0.0, sys);
    return std::pair{std::max(p.infidelity_naive, p.infidelity_bb1), 1e-12};
  }));

  return results;
}

}  // namespace fpsearch
