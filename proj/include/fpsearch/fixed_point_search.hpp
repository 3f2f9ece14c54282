#pragma once

// Phase oracles and the recursive fixed-point search operator
//
//   V_0 = U,   V_{r+1} = V_r R_0 V_r^dag R_f V_r
//
// where U is the pseudo-Hadamard (a 90 degree y rotation on every qubit),
// R_f multiplies the matching basis states by exp(i*phase) and R_0 does the
// same for |0...0>. With phase = pi/3 the failure probability cubes at every
// level.

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fpsearch/quantum_core.hpp"

namespace fpsearch {

inline constexpr double kFixedPointPhase = std::numbers::pi / 3.0;
inline constexpr int kDefaultMaxOrder = 8;

class DepthLimitExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A search function f given by its matching inputs, plus the oracle phase.
class OracleSpec {
 public:
  /// `matching` holds n-character bit strings such as "01"; the first
  /// character is qubit 1 (most significant).
  OracleSpec(int num_qubits, const std::vector<std::string>& matching, double phase);

  static OracleSpec from_indices(int num_qubits, std::vector<std::size_t> indices, double phase);
  /// The R_0 oracle: |0...0> is the single matching state.
  static OracleSpec origin(int num_qubits, double phase);
  /// All oracles with exactly k matching states, in lexicographic order.
  static std::vector<OracleSpec> all_with_k(int num_qubits, std::size_t k, double phase);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  std::size_t k() const { return matching_.size(); }
  double phase() const { return phase_; }
  /// Sorted basis indices of the matching states.
  const std::vector<std::size_t>& matching() const { return matching_; }
  bool matches(std::size_t index) const;
  std::vector<std::string> matching_strings() const;
  /// Short identifier such as "00+01".
  std::string id() const;

  OracleSpec with_phase(double phase) const;
  /// Same matching set, negated phase (realizes R^dag).
  OracleSpec inverse() const { return with_phase(-phase_); }
  /// Non-matching states become matching. Throws when k = N.
  OracleSpec complement() const;

  friend bool operator==(const OracleSpec&, const OracleSpec&) = default;

 private:
  OracleSpec(int num_qubits, std::vector<std::size_t> indices, double phase, int);

  int num_qubits_;
  std::vector<std::size_t> matching_;
  double phase_;
};

std::string bitstring(std::size_t index, int num_qubits);
std::size_t parse_bitstring(std::string_view bits, int num_qubits);

/// Recursion depth r, bounded by a configurable cap.
class RecursionOrder {
 public:
  explicit RecursionOrder(int r, int max_order = kDefaultMaxOrder);
  int value() const { return r_; }
  int max_order() const { return max_; }

 private:
  int r_;
  int max_;
};

enum class GateKind { U, UDag, Rf, RfDag, R0, R0Dag };

std::string_view gate_name(GateKind g);
GateKind gate_adjoint(GateKind g);
bool is_oracle_family(GateKind g);  // R_f or R_f^dag
bool is_origin_family(GateKind g);  // R_0 or R_0^dag

/// diag(...) with exp(i*phase) on matching states and 1 elsewhere.
UnitaryMatrix phase_oracle(const OracleSpec& spec);

/// Tensor power of [[c, -s], [s, c]], c = s = 1/sqrt(2).
UnitaryMatrix pseudo_hadamard(int num_qubits);

/// 2x2 rotation exp(-i*angle*sigma_y/2).
UnitaryMatrix rotation_y(double angle);

UnitaryMatrix gate_unitary(GateKind g, const OracleSpec& oracle, const OracleSpec& origin);

/// Throws std::invalid_argument when oracle and origin disagree on n or
/// phase, or when origin does not match exactly |0...0>.
void check_oracle_pair(const OracleSpec& oracle, const OracleSpec& origin);

/// V_r by exact recursion.
UnitaryMatrix recursive_operator(const RecursionOrder& order, const OracleSpec& oracle,
                                 const OracleSpec& origin);

/// Gate list in application (time) order: the first entry acts first and
/// V_r = G_last * ... * G_first. For r = 1 this is [U, R_f, U^dag, R_0, U].
std::vector<GateKind> expand_gate_list(const RecursionOrder& order);

/// Product of a time-ordered gate list.
UnitaryMatrix gate_list_unitary(const std::vector<GateKind>& gates, const OracleSpec& oracle,
                                const OracleSpec& origin);

/// Sum over matching x of |<x|V|0...0>|^2.
double success_probability(const UnitaryMatrix& v, const OracleSpec& oracle);

/// Equal-weight superposition of the matching states (real, positive).
StateVector target_state(const OracleSpec& oracle);

/// |<t|V|0...0>|^2 for the target superposition t.
double target_overlap_probability(const UnitaryMatrix& v, const OracleSpec& oracle);

/// 1 - (1 - k/2^n)^(3^r).
double closed_form_success(const RecursionOrder& order, std::size_t k, int num_qubits);

/// (3^r - 1) / 2
std::uint64_t query_count(const RecursionOrder& order);

}  // namespace fpsearch
