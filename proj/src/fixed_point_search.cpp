#include "fpsearch/fixed_point_search.hpp"

#include <algorithm>
#include <cmath>

namespace fpsearch {

namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits));
  }
}

void check_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(phase) || !(phase > -two_pi && phase < two_pi)) {
    throw std::invalid_argument("oracle phase must lie in (-2pi, 2pi)");
  }
}

}  // namespace

std::string bitstring(std::size_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1U) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

std::size_t parse_bitstring(std::string_view bits, int num_qubits) {
  if (bits.size() != static_cast<std::size_t>(num_qubits)) {
    throw std::invalid_argument("bit string '" + std::string(bits) + "' does not have length " +
                                std::to_string(num_qubits));
  }
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string '" + std::string(bits) + "' has a non-binary digit");
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

OracleSpec::OracleSpec(int num_qubits, std::vector<std::size_t> indices, double phase, int)
    : num_qubits_(num_qubits), matching_(std::move(indices)), phase_(phase) {
  check_qubits(num_qubits_);
  check_phase(phase_);
  if (matching_.empty()) throw std::invalid_argument("oracle needs at least one matching state");
  std::sort(matching_.begin(), matching_.end());
  if (std::adjacent_find(matching_.begin(), matching_.end()) != matching_.end()) {
    throw std::invalid_argument("matching states must be distinct");
  }
  if (matching_.back() >= dim()) throw std::invalid_argument("matching index out of range");
}

OracleSpec::OracleSpec(int num_qubits, const std::vector<std::string>& matching, double phase)
    : OracleSpec(num_qubits,
                 [&] {
                   check_qubits(num_qubits);
                   std::vector<std::size_t> idx;
                   idx.reserve(matching.size());
                   for (const auto& m : matching) idx.push_back(parse_bitstring(m, num_qubits));
                   return idx;
                 }(),
                 phase, 0) {}

OracleSpec OracleSpec::from_indices(int num_qubits, std::vector<std::size_t> indices,
                                    double phase) {
  return OracleSpec(num_qubits, std::move(indices), phase, 0);
}

OracleSpec OracleSpec::origin(int num_qubits, double phase) {
  return OracleSpec(num_qubits, std::vector<std::size_t>{0}, phase, 0);
}

std::vector<OracleSpec> OracleSpec::all_with_k(int num_qubits, std::size_t k, double phase) {
  check_qubits(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (k < 1 || k > dim) throw std::invalid_argument("k must lie in 1..2^n");
  std::vector<OracleSpec> out;
  // Lexicographic k-subsets of {0..dim-1}.
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(from_indices(num_qubits, pick, phase));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == dim - k + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

bool OracleSpec::matches(std::size_t index) const {
  return std::binary_search(matching_.begin(), matching_.end(), index);
}

std::vector<std::string> OracleSpec::matching_strings() const {
  std::vector<std::string> out;
  for (auto i : matching_) out.push_back(bitstring(i, num_qubits_));
  return out;
}

std::string OracleSpec::id() const {
  std::string s;
  for (auto i : matching_) {
    if (!s.empty()) s += '+';
    s += bitstring(i, num_qubits_);
  }
  return s;
}

OracleSpec OracleSpec::with_phase(double phase) const {
  return OracleSpec(num_qubits_, matching_, phase, 0);
}

OracleSpec OracleSpec::complement() const {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!matches(i)) rest.push_back(i);
  }
  if (rest.empty()) throw std::invalid_argument("complement of the full set is empty");
  return OracleSpec(num_qubits_, std::move(rest), phase_, 0);
}

RecursionOrder::RecursionOrder(int r, int max_order) : r_(r), max_(max_order) {
  if (r < 0) throw std::invalid_argument("recursion order must be nonnegative");
  if (r > max_order) {
    throw DepthLimitExceeded("recursion order " + std::to_string(r) +
                             " exceeds the configured maximum " + std::to_string(max_order));
  }
}

std::string_view gate_name(GateKind g) {
  switch (g) {
    case GateKind::U: return "U";
    case GateKind::UDag: return "U_dag";
    case GateKind::Rf: return "R_f";
    case GateKind::RfDag: return "R_f_dag";
    case GateKind::R0: return "R_0";
    case GateKind::R0Dag: return "R_0_dag";
  }
  return "?";
}

GateKind gate_adjoint(GateKind g) {
  switch (g) {
    case GateKind::U: return GateKind::UDag;
    case GateKind::UDag: return GateKind::U;
    case GateKind::Rf: return GateKind::RfDag;
    case GateKind::RfDag: return GateKind::Rf;
    case GateKind::R0: return GateKind::R0Dag;
    case GateKind::R0Dag: return GateKind::R0;
  }
  return g;
}

bool is_oracle_family(GateKind g) { return g == GateKind::Rf || g == GateKind::RfDag; }
bool is_origin_family(GateKind g) { return g == GateKind::R0 || g == GateKind::R0Dag; }

UnitaryMatrix phase_oracle(const OracleSpec& spec) {
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.dim()));
  for (auto i : spec.matching()) phases(static_cast<Eigen::Index>(i)) = spec.phase();
  return UnitaryMatrix::diagonal_phases(phases);
}

UnitaryMatrix rotation_y(double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  CMatrix m(2, 2);
  m << c, -s, s, c;
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix pseudo_hadamard(int num_qubits) {
  check_qubits(num_qubits);
  const UnitaryMatrix single = rotation_y(std::numbers::pi / 2.0);
  UnitaryMatrix out = single;
  for (int q = 1; q < num_qubits; ++q) out = tensor_product(out, single);
  return out;
}

void check_oracle_pair(const OracleSpec& oracle, const OracleSpec& origin) {
  if (oracle.num_qubits() != origin.num_qubits()) {
    throw std::invalid_argument("oracle and origin act on different registers");
  }
  if (oracle.phase() != origin.phase()) {
    throw std::invalid_argument("oracle and origin must use the same phase (sign included)");
  }
  if (origin.k() != 1 || origin.matching().front() != 0) {
    throw std::invalid_argument("origin oracle must match exactly the all-zero state");
  }
}

UnitaryMatrix gate_unitary(GateKind g, const OracleSpec& oracle, const OracleSpec& origin) {
  switch (g) {
    case GateKind::U: return pseudo_hadamard(oracle.num_qubits());
    case GateKind::UDag: return pseudo_hadamard(oracle.num_qubits()).adjoint();
    case GateKind::Rf: return phase_oracle(oracle);
    case GateKind::RfDag: return phase_oracle(oracle.inverse());
    case GateKind::R0: return phase_oracle(origin);
    case GateKind::R0Dag: return phase_oracle(origin.inverse());
  }
  throw std::logic_error("unknown gate kind");
}

UnitaryMatrix recursive_operator(const RecursionOrder& order, const OracleSpec& oracle,
                                 const OracleSpec& origin) {
  check_oracle_pair(oracle, origin);
  const UnitaryMatrix rf = phase_oracle(oracle);
  const UnitaryMatrix r0 = phase_oracle(origin);
  UnitaryMatrix v = pseudo_hadamard(oracle.num_qubits());
  for (int level = 0; level < order.value(); ++level) {
    v = v * r0 * v.adjoint() * rf * v;
  }
  return v;
}

std::vector<GateKind> expand_gate_list(const RecursionOrder& order) {
  std::vector<GateKind> gates{GateKind::U};
  for (int level = 0; level < order.value(); ++level) {
    std::vector<GateKind> next;
    next.reserve(3 * gates.size() + 2);
    // Time order of V R_0 V^dag R_f V: V first, R_f, V^dag, R_0, V.
    next.insert(next.end(), gates.begin(), gates.end());
    next.push_back(GateKind::Rf);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) next.push_back(gate_adjoint(*it));
    next.push_back(GateKind::R0);
    next.insert(next.end(), gates.begin(), gates.end());
    gates = std::move(next);
  }
  return gates;
}

UnitaryMatrix gate_list_unitary(const std::vector<GateKind>& gates, const OracleSpec& oracle,
                                const OracleSpec& origin) {
  check_oracle_pair(oracle, origin);
  UnitaryMatrix v = UnitaryMatrix::identity(oracle.dim());
  for (GateKind g : gates) v = gate_unitary(g, oracle, origin) * v;
  return v;
}

double success_probability(const UnitaryMatrix& v, const OracleSpec& oracle) {
  if (v.dim() != oracle.dim()) throw std::invalid_argument("success_probability: dimension mismatch");
  double p = 0.0;
  for (auto x : oracle.matching()) p += std::norm(v(x, 0));
  return std::clamp(p, 0.0, 1.0);
}

StateVector target_state(const OracleSpec& oracle) {
  CVector t = CVector::Zero(static_cast<Eigen::Index>(oracle.dim()));
  const double amp = 1.0 / std::sqrt(static_cast<double>(oracle.k()));
  for (auto x : oracle.matching()) t(static_cast<Eigen::Index>(x)) = amp;
  return StateVector(std::move(t));
}

double target_overlap_probability(const UnitaryMatrix& v, const OracleSpec& oracle) {
  const StateVector t = target_state(oracle);
  const StateVector out = apply(v, StateVector::basis(oracle.num_qubits(), 0));
  return std::norm(t.amplitudes().dot(out.amplitudes()));
}

double closed_form_success(const RecursionOrder& order, std::size_t k, int num_qubits) {
  check_qubits(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (k < 1 || k > dim) throw std::invalid_argument("k must lie in 1..2^n");
  double fail = 1.0 - static_cast<double>(k) / static_cast<double>(dim);
  for (int level = 0; level < order.value(); ++level) fail = fail * fail * fail;
  return 1.0 - fail;
}

std::uint64_t query_count(const RecursionOrder& order) {
  std::uint64_t p = 1;
  for (int level = 0; level < order.value(); ++level) p *= 3;
  return (p - 1) / 2;
}

}  // namespace fpsearch
