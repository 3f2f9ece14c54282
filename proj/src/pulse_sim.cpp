#include "fpsearch/pulse_sim.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "fpsearch/format.hpp"

namespace fpsearch {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAxisTol = 1e-12;

double wrap_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi - kAxisTol) p = 0.0;
  return p;
}

// Wraps into (-pi, pi].
double wrap_symmetric(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w > kPi) w -= kTwoPi;
  if (w <= -kPi) w += kTwoPi;
  return w;
}

bool uses_h(Targets t) { return t != Targets::C; }
bool uses_c(Targets t) { return t != Targets::H; }

double deg(double rad) { return rad * 180.0 / kPi; }
double rad(double deg) { return deg * kPi / 180.0; }

}  // namespace

std::string_view targets_name(Targets t) {
  switch (t) {
    case Targets::H: return "H";
    case Targets::C: return "C";
    case Targets::Both: return "HC";
  }
  return "?";
}

Targets parse_targets(std::string_view s) {
  if (s == "H") return Targets::H;
  if (s == "C") return Targets::C;
  if (s == "HC") return Targets::Both;
  throw std::invalid_argument("unknown pulse targets '" + std::string(s) + "'");
}

Targets targets_of(Spin s) { return s == Spin::H ? Targets::H : Targets::C; }

void SpinSystem::validate() const {
  if (!(coupling_hz > 0.0) || !std::isfinite(coupling_hz)) {
    throw std::invalid_argument("J must be positive");
  }
  if (!(t90_s > 0.0) || !std::isfinite(t90_s)) throw std::invalid_argument("t90 must be positive");
  if (!(t2_h_s > 0.0) || !(t2_c_s > 0.0)) throw std::invalid_argument("T2 values must be positive");
}

PulseEvent PulseEvent::rf(Targets targets, double angle, double phase) {
  PulseEvent e{EventKind::RfPulse, targets, angle, phase, 0.0};
  e.validate();
  return e;
}

PulseEvent PulseEvent::delay(double seconds) {
  PulseEvent e{EventKind::Delay, Targets::Both, 0.0, 0.0, seconds};
  e.validate();
  return e;
}

PulseEvent PulseEvent::z_virtual(Targets targets, double angle) {
  PulseEvent e{EventKind::ZVirtual, targets, angle, 0.0, 0.0};
  e.validate();
  return e;
}

void PulseEvent::validate() const {
  switch (kind) {
    case EventKind::RfPulse:
    case EventKind::ZVirtual:
      if (!std::isfinite(angle) || !std::isfinite(phase)) {
        throw std::invalid_argument("rotation angle and phase must be finite");
      }
      break;
    case EventKind::Delay:
      if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw std::invalid_argument("delay duration must be positive");
      }
      break;
  }
}

PulseSequence::PulseSequence(std::vector<PulseEvent> events, bool debug) : debug_(debug) {
  for (const auto& e : events) push_back(e);
}

void PulseSequence::push_back(const PulseEvent& e) {
  e.validate();
  if (e.kind == EventKind::ZVirtual && !debug_) {
    throw std::invalid_argument("virtual z rotations are only allowed in debug sequences");
  }
  events_.push_back(e);
}

void PulseSequence::append(const PulseSequence& other) {
  const std::size_t offset = events_.size();
  for (const auto& e : other.events_) push_back(e);
  for (const auto& g : other.gates_) gates_.push_back({g.gate, g.begin + offset, g.end + offset});
}

void PulseSequence::append_gate(GateKind gate, const PulseSequence& body) {
  const std::size_t begin = events_.size();
  for (const auto& e : body.events_) push_back(e);
  gates_.push_back({gate, begin, events_.size()});
}

std::size_t PulseSequence::rf_pulse_count() const {
  std::size_t n = 0;
  for (const auto& e : events_) n += e.kind == EventKind::RfPulse;
  return n;
}

std::size_t PulseSequence::delay_count() const {
  std::size_t n = 0;
  for (const auto& e : events_) n += e.kind == EventKind::Delay;
  return n;
}

double PulseSequence::duration(const SpinSystem& sys) const {
  double t = 0.0;
  for (const auto& e : events_) {
    if (e.kind == EventKind::Delay) t += e.duration;
    if (e.kind == EventKind::RfPulse) t += std::abs(e.angle) / (kPi / 2.0) * sys.t90_s;
  }
  return t;
}

ErrorModel ErrorModel::rf(double eps, RfErrorScope scope) {
  ErrorModel m;
  m.eps_h = eps;
  m.eps_c = eps;
  m.scope = scope;
  m.validate();
  return m;
}

ErrorModel ErrorModel::coupling(double delta_j) {
  ErrorModel m;
  m.delta_j = delta_j;
  m.validate();
  return m;
}

void ErrorModel::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && std::abs(v) < 1.0; };
  if (!ok(eps_h) || !ok(eps_c) || !ok(delta_j)) {
    throw std::invalid_argument("error parameters must satisfy |eps| < 1 and |deltaJ| < 1");
  }
}

std::string_view style_name(PulseStyle s) { return s == PulseStyle::Naive ? "naive" : "bb1"; }

PulseStyle parse_style(std::string_view s) {
  if (s == "naive") return PulseStyle::Naive;
  if (s == "bb1") return PulseStyle::Bb1;
  throw std::invalid_argument("unknown pulse style '" + std::string(s) + "'");
}

UnitaryMatrix spin_rotation(double angle, double phase) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex off = Complex(0.0, -s) * std::polar(1.0, -phase);
  const Complex off_t = Complex(0.0, -s) * std::polar(1.0, phase);
  CMatrix m(2, 2);
  m << c, off, off_t, c;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix spin_z_rotation(double angle) {
  Eigen::VectorXd phases(2);
  phases << -angle / 2.0, angle / 2.0;
  return UnitaryMatrix::diagonal_phases(phases);
}

UnitaryMatrix pulse_unitary(const PulseEvent& event, const SpinSystem& sys, const ErrorModel& err,
                            bool allow_virtual) {
  event.validate();
  const UnitaryMatrix id2 = UnitaryMatrix::identity(2);
  switch (event.kind) {
    case EventKind::RfPulse: {
      const UnitaryMatrix h = uses_h(event.targets)
                                  ? spin_rotation(event.angle * (1.0 + err.eps_h), event.phase)
                                  : id2;
      const UnitaryMatrix c = uses_c(event.targets)
                                  ? spin_rotation(event.angle * (1.0 + err.eps_c), event.phase)
                                  : id2;
      return tensor_product(h, c);
    }
    case EventKind::Delay: {
      // exp(-i * pi J (1 + dJ) t * 2HzCz), 2HzCz = diag(1/2, -1/2, -1/2, 1/2)
      const double theta = kPi * sys.coupling_hz * (1.0 + err.delta_j) * event.duration;
      Eigen::VectorXd phases(4);
      phases << -theta / 2.0, theta / 2.0, theta / 2.0, -theta / 2.0;
      return UnitaryMatrix::diagonal_phases(phases);
    }
    case EventKind::ZVirtual: {
      if (!allow_virtual) {
        throw std::invalid_argument("virtual z rotation in a physical sequence");
      }
      const UnitaryMatrix z = spin_z_rotation(event.angle);
      return tensor_product(uses_h(event.targets) ? z : id2, uses_c(event.targets) ? z : id2);
    }
  }
  throw std::logic_error("unknown event kind");
}

UnitaryMatrix sequence_unitary(const PulseSequence& seq, const SpinSystem& sys,
                               const ErrorModel& err) {
  sys.validate();
  err.validate();
  std::vector<bool> rf_error_free(seq.size(), false);
  if (err.scope == RfErrorScope::UGatesOnly) {
    for (const auto& g : seq.gates()) {
      if (g.gate == GateKind::U || g.gate == GateKind::UDag) continue;
      for (std::size_t i = g.begin; i < g.end; ++i) rf_error_free[i] = true;
    }
  }
  ErrorModel exact_rf = err;
  exact_rf.eps_h = 0.0;
  exact_rf.eps_c = 0.0;

  UnitaryMatrix total = UnitaryMatrix::identity(4);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const UnitaryMatrix step =
        pulse_unitary(seq.events()[i], sys, rf_error_free[i] ? exact_rf : err, seq.is_debug());
    const double drift = step.unitarity_error();
    if (!(drift <= kSequenceTol)) {
      throw InvariantViolation("pulse propagator " + std::to_string(i) +
                                   " is not unitary (deviation " + std::to_string(drift) + ")",
                               i);
    }
    total = step * total;
  }
  return total;
}

PulseSequence composite_z(double theta, Spin spin) {
  if (!(std::abs(theta) <= kTwoPi)) throw std::invalid_argument("composite z angle exceeds 2pi");
  const Targets t = targets_of(spin);
  PulseSequence seq;
  // Operator product 90(x) * theta(y) * 90(-x), so 90(-x) is applied first.
  seq.push_back(PulseEvent::rf(t, kPi / 2.0, kPi));
  if (theta >= 0.0) {
    seq.push_back(PulseEvent::rf(t, theta, kPi / 2.0));
  } else {
    seq.push_back(PulseEvent::rf(t, -theta, 3.0 * kPi / 2.0));
  }
  seq.push_back(PulseEvent::rf(t, kPi / 2.0, 0.0));
  return seq;
}

PhaseGateCoefficients decompose_phase_gate(const OracleSpec& spec) {
  if (spec.num_qubits() != 2) {
    throw std::invalid_argument("phase gate compilation supports exactly two qubits");
  }
  // Orthonormal diagonal basis: Hz, Cz, 2HzCz (and the identity/2).
  constexpr double hz[4] = {0.5, 0.5, -0.5, -0.5};
  constexpr double cz[4] = {0.5, -0.5, 0.5, -0.5};
  constexpr double zz[4] = {0.5, -0.5, -0.5, 0.5};
  PhaseGateCoefficients out{0.0, 0.0, 0.0};
  for (auto i : spec.matching()) {
    out.hz += spec.phase() * hz[i];
    out.cz += spec.phase() * cz[i];
    out.coupling += spec.phase() * zz[i];
  }
  out.hz = wrap_symmetric(out.hz);
  out.cz = wrap_symmetric(out.cz);
  out.coupling = wrap_symmetric(out.coupling);
  return out;
}

PulseSequence compile_phase_gate(const OracleSpec& spec, const SpinSystem& sys) {
  sys.validate();
  if (spec.num_qubits() != 2) {
    throw std::invalid_argument("phase gate compilation supports exactly two qubits");
  }
  if (spec.phase() == 0.0) throw std::invalid_argument("phase gate needs a nonzero phase");
  const PhaseGateCoefficients c = decompose_phase_gate(spec);

  PulseSequence seq;
  // exp(i a Hz) = Rz(-a) on 1H; likewise for 13C.
  if (c.hz != 0.0) seq.append(composite_z(-c.hz, Spin::H));
  if (c.cz != 0.0) seq.append(composite_z(-c.cz, Spin::C));
  // A delay t gives exp(-i pi J t 2HzCz); exp(+i g 2HzCz) needs t = -g/(pi J).
  if (c.coupling < 0.0) {
    seq.push_back(PulseEvent::delay(-c.coupling / (kPi * sys.coupling_hz)));
  } else if (c.coupling > 0.0) {
    // 13C inversion flips the sign of 2HzCz for the enclosed delay.
    seq.push_back(PulseEvent::rf(Targets::C, kPi, 0.0));
    seq.push_back(PulseEvent::delay(c.coupling / (kPi * sys.coupling_hz)));
    seq.push_back(PulseEvent::rf(Targets::C, kPi, kPi));
  }
  return merge_adjacent_pulses(seq);
}

PulseSequence merge_adjacent_pulses(const PulseSequence& seq) {
  std::vector<PulseEvent> out;
  for (PulseEvent e : seq.events()) {
    if (e.kind == EventKind::RfPulse) {
      if (e.angle < 0.0) {
        e.angle = -e.angle;
        e.phase += kPi;
      }
      e.phase = wrap_phase(e.phase);
      if (!out.empty() && out.back().kind == EventKind::RfPulse &&
          out.back().targets == e.targets) {
        PulseEvent& prev = out.back();
        const double diff = wrap_phase(e.phase - prev.phase);
        double sign = 0.0;
        if (diff < kAxisTol) sign = 1.0;
        if (std::abs(diff - kPi) < kAxisTol) sign = -1.0;
        if (sign != 0.0) {
          prev.angle += sign * e.angle;
          if (prev.angle < 0.0) {
            prev.angle = -prev.angle;
            prev.phase = wrap_phase(prev.phase + kPi);
          }
          if (prev.angle < kAxisTol) out.pop_back();
          continue;
        }
      }
    }
    out.push_back(e);
  }
  return PulseSequence(std::move(out), seq.is_debug());
}

double bb1_phase(double theta) { return std::acos(-theta / (4.0 * kPi)); }

PulseSequence bb1_expand(double theta, double phase, Targets targets) {
  if (!(theta > 0.0 && theta <= kTwoPi)) {
    throw std::invalid_argument("BB1 expansion needs an angle in (0, 2pi]");
  }
  const double p1 = bb1_phase(theta);
  PulseSequence seq;
  seq.push_back(PulseEvent::rf(targets, kPi, wrap_phase(phase + p1)));
  seq.push_back(PulseEvent::rf(targets, kTwoPi, wrap_phase(phase + 3.0 * p1)));
  seq.push_back(PulseEvent::rf(targets, kPi, wrap_phase(phase + p1)));
  seq.push_back(PulseEvent::rf(targets, theta, wrap_phase(phase)));
  return seq;
}

PulseSequence to_bb1(const PulseSequence& seq) {
  PulseSequence out(std::vector<PulseEvent>{}, seq.is_debug());
  std::vector<std::size_t> new_index(seq.size() + 1, 0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    new_index[i] = out.size();
    const PulseEvent& e = seq.events()[i];
    if (e.kind == EventKind::RfPulse) {
      double angle = e.angle;
      double phase = e.phase;
      if (angle < 0.0) {
        angle = -angle;
        phase += kPi;
      }
      if (angle == 0.0) continue;
      out.append(bb1_expand(angle, phase, e.targets));
    } else {
      out.push_back(e);
    }
  }
  new_index[seq.size()] = out.size();
  // Re-derive gate boundaries in the expanded sequence.
  PulseSequence result(std::vector<PulseEvent>{}, seq.is_debug());
  std::size_t cursor = 0;
  for (const auto& g : seq.gates()) {
    const std::size_t b = new_index[g.begin];
    const std::size_t end = new_index[g.end];
    for (; cursor < b; ++cursor) result.push_back(out.events()[cursor]);
    PulseSequence body;
    for (std::size_t i = b; i < end; ++i) body.push_back(out.events()[i]);
    result.append_gate(g.gate, body);
    cursor = end;
  }
  for (; cursor < out.size(); ++cursor) result.push_back(out.events()[cursor]);
  return result;
}

PulseSequence compile_gate(GateKind gate, const OracleSpec& oracle, const SpinSystem& sys) {
  const OracleSpec origin = OracleSpec::origin(oracle.num_qubits(), oracle.phase());
  switch (gate) {
    case GateKind::U:
      return PulseSequence({PulseEvent::rf(Targets::Both, kPi / 2.0, kPi / 2.0)});
    case GateKind::UDag:
      return PulseSequence({PulseEvent::rf(Targets::Both, kPi / 2.0, 3.0 * kPi / 2.0)});
    case GateKind::Rf: return compile_phase_gate(oracle, sys);
    case GateKind::RfDag: return compile_phase_gate(oracle.inverse(), sys);
    case GateKind::R0: return compile_phase_gate(origin, sys);
    case GateKind::R0Dag: return compile_phase_gate(origin.inverse(), sys);
  }
  throw std::logic_error("unknown gate kind");
}

PulseSequence compile_algorithm(const RecursionOrder& order, const OracleSpec& oracle,
                                const SpinSystem& sys, PulseStyle style) {
  if (oracle.num_qubits() != 2) {
    throw std::invalid_argument("pulse compilation supports exactly two qubits");
  }
  sys.validate();
  // Each distinct gate is lowered once; no optimization across gates.
  std::map<GateKind, PulseSequence> lowered;
  for (GateKind g : {GateKind::U, GateKind::UDag, GateKind::Rf, GateKind::RfDag, GateKind::R0,
                     GateKind::R0Dag}) {
    lowered.emplace(g, compile_gate(g, oracle, sys));
  }
  PulseSequence seq;
  for (GateKind g : expand_gate_list(order)) seq.append_gate(g, lowered.at(g));
  return style == PulseStyle::Bb1 ? to_bb1(seq) : seq;
}

double gate_infidelity(const UnitaryMatrix& actual, const UnitaryMatrix& ideal) {
  if (actual.dim() != ideal.dim()) throw std::invalid_argument("gate_infidelity: dimension mismatch");
  // 1 - |t| equals ||A - cI||^2 / (2d) with c the phase of t. Summing the
  // small residual entries avoids the cancellation in 1 - |t|^2 once the
  // infidelity drops towards 1e-16.
  const double d = static_cast<double>(actual.dim());
  const CMatrix w = ideal.matrix().adjoint() * actual.matrix();
  const Complex t = w.trace() / d;
  const Complex c = std::abs(t) > 0.0 ? t / std::abs(t) : Complex{1.0, 0.0};
  const CMatrix residual = w - c * CMatrix::Identity(w.rows(), w.cols());
  const double s = std::min(1.0, residual.squaredNorm() / (2.0 * d));
  return std::max(0.0, s * (2.0 - s));
}

std::string to_text(const PulseSequence& seq) {
  std::string out;
  std::size_t next_gate = 0;
  const auto& gates = seq.gates();
  for (std::size_t i = 0; i <= seq.size(); ++i) {
    while (next_gate < gates.size() && gates[next_gate].begin == i) {
      out += "# gate: ";
      out += gate_name(gates[next_gate].gate);
      out += '\n';
      ++next_gate;
    }
    if (i == seq.size()) break;
    const PulseEvent& e = seq.events()[i];
    switch (e.kind) {
      case EventKind::RfPulse:
        out += "PULSE " + std::string(targets_name(e.targets)) + ' ' +
               format_decimal(deg(e.angle), 9) + ' ' + format_decimal(deg(e.phase), 9) + '\n';
        break;
      case EventKind::Delay:
        out += "DELAY " + format_decimal(e.duration, 9) + '\n';
        break;
      case EventKind::ZVirtual:
        out += "ZROT " + std::string(targets_name(e.targets)) + ' ' +
               format_decimal(deg(e.angle), 9) + '\n';
        break;
    }
  }
  return out;
}

PulseSequence parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PulseEvent> events;
  std::vector<std::pair<GateKind, std::size_t>> starts;
  bool debug = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("pulse text line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    if (word == "#") {
      std::string tag;
      std::string name;
      fields >> tag >> name;
      if (tag != "gate:") continue;
      bool found = false;
      for (GateKind g : {GateKind::U, GateKind::UDag, GateKind::Rf, GateKind::RfDag, GateKind::R0,
                         GateKind::R0Dag}) {
        if (gate_name(g) == name) {
          starts.emplace_back(g, events.size());
          found = true;
        }
      }
      if (!found) fail("unknown gate '" + name + "'");
    } else if (word == "PULSE") {
      std::string targets;
      double angle = 0.0;
      double phase = 0.0;
      if (!(fields >> targets >> angle >> phase)) fail("malformed PULSE");
      events.push_back(PulseEvent::rf(parse_targets(targets), rad(angle), rad(phase)));
    } else if (word == "DELAY") {
      double t = 0.0;
      if (!(fields >> t)) fail("malformed DELAY");
      events.push_back(PulseEvent::delay(t));
    } else if (word == "ZROT") {
      std::string targets;
      double angle = 0.0;
      if (!(fields >> targets >> angle)) fail("malformed ZROT");
      events.push_back(PulseEvent::z_virtual(parse_targets(targets), rad(angle)));
      debug = true;
    } else {
      fail("unknown record '" + word + "'");
    }
  }
  // Gate spans run from one marker to the next (or the end).
  PulseSequence seq(std::vector<PulseEvent>{}, debug);
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < starts.size(); ++g) {
    const std::size_t b = starts[g].second;
    const std::size_t end = g + 1 < starts.size() ? starts[g + 1].second : events.size();
    for (; cursor < b; ++cursor) seq.push_back(events[cursor]);
    PulseSequence body(std::vector<PulseEvent>(events.begin() + static_cast<std::ptrdiff_t>(b),
                                               events.begin() + static_cast<std::ptrdiff_t>(end)),
                       debug);
    seq.append_gate(starts[g].first, body);
    cursor = end;
  }
  for (; cursor < events.size(); ++cursor) seq.push_back(events[cursor]);
  return seq;
}

}  // namespace fpsearch
