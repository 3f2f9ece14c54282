#pragma once

// Gate -> pulse lowering and propagation for a heteronuclear two-spin
// (1H, 13C) system with an Ising coupling pi*J*2HzCz.
//
// rf pulses are hard rotations: coupling evolution during a pulse is
// neglected, so pulse durations never enter the propagators. Systematic
// errors are coherent: rf amplitude scaling per channel and a fractional
// miscalibration of J.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpsearch/fixed_point_search.hpp"
#include "fpsearch/quantum_core.hpp"

namespace fpsearch {

enum class Spin { H, C };

/// Which channels an rf pulse drives. H is qubit 1, C is qubit 2.
enum class Targets { H, C, Both };

std::string_view targets_name(Targets t);
Targets parse_targets(std::string_view s);
Targets targets_of(Spin s);

struct SpinSystem {
  double coupling_hz = 194.8;
  double t90_s = 15e-6;
  double t2_h_s = 1.2;
  double t2_c_s = 0.6;

  void validate() const;
};

enum class EventKind { RfPulse, Delay, ZVirtual };

struct PulseEvent {
  EventKind kind = EventKind::Delay;
  Targets targets = Targets::Both;
  double angle = 0.0;     // radians, rf pulses and virtual z rotations
  double phase = 0.0;     // radians in the xy plane: 0 = x, pi/2 = y
  double duration = 0.0;  // seconds, delays only

  static PulseEvent rf(Targets targets, double angle, double phase);
  static PulseEvent delay(double seconds);
  /// Ideal exp(-i*angle*sigma_z/2) on the targets. Debug sequences only.
  static PulseEvent z_virtual(Targets targets, double angle);

  void validate() const;
  friend bool operator==(const PulseEvent&, const PulseEvent&) = default;
};

/// Half-open event range [begin, end) produced by one gate.
struct GateSpan {
  GateKind gate;
  std::size_t begin;
  std::size_t end;
  friend bool operator==(const GateSpan&, const GateSpan&) = default;
};

class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::vector<PulseEvent> events, bool debug = false);

  /// Debug sequences may contain virtual z rotations.
  bool is_debug() const { return debug_; }
  const std::vector<PulseEvent>& events() const { return events_; }
  const std::vector<GateSpan>& gates() const { return gates_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }

  void push_back(const PulseEvent& e);
  void append(const PulseSequence& other);
  /// Appends `body` and records it as the realization of `gate`.
  void append_gate(GateKind gate, const PulseSequence& body);

  std::size_t rf_pulse_count() const;
  std::size_t delay_count() const;
  /// Total free-evolution time plus nominal rf pulse time.
  double duration(const SpinSystem& sys) const;

  friend bool operator==(const PulseSequence&, const PulseSequence&) = default;

 private:
  std::vector<PulseEvent> events_;
  std::vector<GateSpan> gates_;
  bool debug_ = false;
};

enum class RfErrorScope {
  AllPulses,   // every rf pulse is mis-scaled
  UGatesOnly,  // only pulses inside U / U^dag gates are mis-scaled
};

struct ErrorModel {
  double eps_h = 0.0;    // actual angle = nominal * (1 + eps_h) on 1H
  double eps_c = 0.0;    // same for 13C
  double delta_j = 0.0;  // evolution uses J * (1 + delta_j)
  RfErrorScope scope = RfErrorScope::AllPulses;

  static ErrorModel rf(double eps, RfErrorScope scope = RfErrorScope::AllPulses);
  static ErrorModel coupling(double delta_j);
  void validate() const;
};

enum class PulseStyle { Naive, Bb1 };

std::string_view style_name(PulseStyle s);
PulseStyle parse_style(std::string_view s);

/// Raised when a propagator loses unitarity; carries the offending event.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(const std::string& what, std::size_t event_index)
      : std::runtime_error(what), event_index_(event_index) {}
  std::size_t event_index() const { return event_index_; }

 private:
  std::size_t event_index_;
};

/// Single-spin rotation exp(-i*angle*(cos(phase) sx + sin(phase) sy)/2).
UnitaryMatrix spin_rotation(double angle, double phase);
/// exp(-i*angle*sz/2)
UnitaryMatrix spin_z_rotation(double angle);

UnitaryMatrix pulse_unitary(const PulseEvent& event, const SpinSystem& sys, const ErrorModel& err,
                            bool allow_virtual = false);

/// Ordered product of pulse propagators (first event acts first). Throws
/// InvariantViolation if any factor deviates from unitarity by > 1e-10.
UnitaryMatrix sequence_unitary(const PulseSequence& seq, const SpinSystem& sys,
                               const ErrorModel& err);

/// Pulses 90(-x), theta(y), 90(x) on one spin; product exp(-i*theta*sz/2).
PulseSequence composite_z(double theta, Spin spin);

/// Coefficients of diag-phase = global * exp(i a Hz) exp(i b Cz) exp(i g 2HzCz),
/// each wrapped into (-pi, pi].
struct PhaseGateCoefficients {
  double hz;
  double cz;
  double coupling;
};
PhaseGateCoefficients decompose_phase_gate(const OracleSpec& spec);

/// Realizes phase_oracle(spec) with composite z rotations and one coupling
/// delay. A coupling term of the sign a plain delay cannot produce is
/// refocused with a 180 pulse pair on 13C. Requires n = 2.
PulseSequence compile_phase_gate(const OracleSpec& spec, const SpinSystem& sys);

/// Merges adjacent rf pulses with identical targets about parallel or
/// antiparallel axes; drops pulses that cancel. Phases end up in [0, 2pi).
PulseSequence merge_adjacent_pulses(const PulseSequence& seq);

/// arccos(-theta / (4 pi))
double bb1_phase(double theta);

/// BB1: pi(phase+p1), 2pi(phase+3p1), pi(phase+p1), theta(phase).
PulseSequence bb1_expand(double theta, double phase, Targets targets);

/// Rewrites every rf pulse through bb1_expand; other events are copied.
PulseSequence to_bb1(const PulseSequence& seq);

PulseSequence compile_gate(GateKind gate, const OracleSpec& oracle, const SpinSystem& sys);

/// Gate-by-gate lowering of V_r. Requires n = 2.
PulseSequence compile_algorithm(const RecursionOrder& order, const OracleSpec& oracle,
                                const SpinSystem& sys, PulseStyle style);

/// 1 - |Tr(ideal^dag actual) / d|^2
double gate_infidelity(const UnitaryMatrix& actual, const UnitaryMatrix& ideal);

/// Line-oriented text form:
///   # gate: <name>
///   PULSE <H|C|HC> <angle_deg> <phase_deg>
///   DELAY <seconds>
///   ZROT <H|C|HC> <angle_deg>          (debug sequences only)
/// Numbers are plain decimals with 9 significant digits.
std::string to_text(const PulseSequence& seq);
PulseSequence parse_text(std::string_view text);

}  // namespace fpsearch
