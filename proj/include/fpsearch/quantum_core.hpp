#pragma once

// Dense complex linear algebra for small qubit registers.
//
// Basis convention: qubit 1 (the 1H spin) is the most significant bit, so
// for two qubits |q1 q2> has index 2*q1 + q2 and |10> is index 2.

#include <complex>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

namespace fpsearch {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance for exact algebraic identities.
inline constexpr double kAlgebraTol = 1e-12;
/// Tolerance for products of many pulse propagators.
inline constexpr double kSequenceTol = 1e-10;

/// Largest register the library accepts (dense 2^n x 2^n matrices).
inline constexpr int kMaxQubits = 12;

/// Returns log2(dim) or throws if dim is not a power of two in range.
int qubits_for_dim(std::size_t dim);

class UnitaryMatrix;

class StateVector {
 public:
  /// Validates that the length is a power of two and the vector is normalized.
  explicit StateVector(CVector amplitudes, double tol = kAlgebraTol);

  static StateVector basis(int num_qubits, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  int num_qubits() const { return qubits_for_dim(dim()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
  double norm() const { return amplitudes_.norm(); }

 private:
  struct Trusted {};
  StateVector(CVector amplitudes, Trusted) : amplitudes_(std::move(amplitudes)) {}
  friend StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

  CVector amplitudes_;
};

class UnitaryMatrix {
 public:
  /// Validates squareness, power-of-two dimension and U^dag U = I within tol.
  explicit UnitaryMatrix(CMatrix entries, double tol = kAlgebraTol);

  static UnitaryMatrix identity(std::size_t dim);
  /// Diagonal unitary with entries exp(i*phases[j]).
  static UnitaryMatrix diagonal_phases(const Eigen::VectorXd& phases);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  int num_qubits() const { return qubits_for_dim(dim()); }
  const CMatrix& matrix() const { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  UnitaryMatrix adjoint() const;
  /// Matrix product; (a * b) applies b first.
  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);
  UnitaryMatrix scaled(Complex unit_phase) const;

  /// max |(U^dag U - I)_ij|
  double unitarity_error() const;

 private:
  struct Trusted {};
  UnitaryMatrix(CMatrix entries, Trusted) : entries_(std::move(entries)) {}
  friend UnitaryMatrix tensor_product(const UnitaryMatrix& a, const UnitaryMatrix& b);

  CMatrix entries_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (eigenvalues >= -1e-10).
  explicit DensityMatrix(CMatrix entries, double tol = kAlgebraTol);

  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const CMatrix& matrix() const { return entries_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  double population(std::size_t i) const { return (*this)(i, i).real(); }
  Complex trace() const { return entries_.trace(); }
  bool is_diagonal(double tol = kAlgebraTol) const;

 private:
  struct Trusted {};
  DensityMatrix(CMatrix entries, Trusted) : entries_(std::move(entries)) {}
  friend DensityMatrix pure_density(const StateVector& psi);
  friend DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho);
  friend DensityMatrix diagonal_part(const DensityMatrix& rho);

  CMatrix entries_;
};

/// Kronecker product; `a` acts on the more significant qubits.
UnitaryMatrix tensor_product(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Throws std::invalid_argument on dimension mismatch.
StateVector apply(const UnitaryMatrix& u, const StateVector& psi);

/// Best-phase max-entry distance: min over the phase fixed by V's largest
/// entry of max_ij |U_ij - c V_ij|. Infinity when V is all zero or dims differ.
double global_phase_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// True iff U = cV for some unit-modulus c, entrywise within tol.
bool equal_up_to_global_phase(const UnitaryMatrix& u, const UnitaryMatrix& v, double tol);

DensityMatrix pure_density(const StateVector& psi);
/// U rho U^dag
DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho);
/// Zeroes every off-diagonal entry.
DensityMatrix diagonal_part(const DensityMatrix& rho);

}  // namespace fpsearch
