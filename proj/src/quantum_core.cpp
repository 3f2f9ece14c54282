#include "fpsearch/quantum_core.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fpsearch {

int qubits_for_dim(std::size_t dim) {
  for (int n = 0; n <= kMaxQubits; ++n) {
    if (dim == (std::size_t{1} << n)) return n;
  }
  throw std::invalid_argument("dimension " + std::to_string(dim) +
                              " is not a power of two up to 2^" + std::to_string(kMaxQubits));
}

StateVector::StateVector(CVector amplitudes, double tol) : amplitudes_(std::move(amplitudes)) {
  qubits_for_dim(dim());
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol) {
    throw std::invalid_argument("state vector is not normalized (|psi|^2 = " +
                                std::to_string(norm2) + ")");
  }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v), Trusted{});
}

UnitaryMatrix::UnitaryMatrix(CMatrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("unitary must be square");
  }
  qubits_for_dim(dim());
  const double err = unitarity_error();
  if (!(err <= tol)) {
    throw std::invalid_argument("matrix is not unitary (max |U^dag U - I| = " +
                                std::to_string(err) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  qubits_for_dim(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(CMatrix::Identity(d, d), Trusted{});
}

UnitaryMatrix UnitaryMatrix::diagonal_phases(const Eigen::VectorXd& phases) {
  qubits_for_dim(static_cast<std::size_t>(phases.size()));
  const auto d = phases.size();
  CMatrix m = CMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = std::polar(1.0, phases(i));
  return UnitaryMatrix(std::move(m), Trusted{});
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(entries_.adjoint(), Trusted{});
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("unitary product: dimension mismatch");
  return UnitaryMatrix(a.entries_ * b.entries_, UnitaryMatrix::Trusted{});
}

UnitaryMatrix UnitaryMatrix::scaled(Complex unit_phase) const {
  if (std::abs(std::abs(unit_phase) - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("global phase factor must have unit modulus");
  }
  return UnitaryMatrix(entries_ * unit_phase, Trusted{});
}

double UnitaryMatrix::unitarity_error() const {
  const auto d = entries_.rows();
  return (entries_.adjoint() * entries_ - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(CMatrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  qubits_for_dim(dim());
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > tol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  qubits_for_dim(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(dim), Trusted{});
}

bool DensityMatrix::is_diagonal(double tol) const {
  const auto d = entries_.rows();
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i != j && std::abs(entries_(i, j)) > tol) return false;
    }
  }
  return true;
}

UnitaryMatrix tensor_product(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const auto ra = a.entries_.rows();
  const auto rb = b.entries_.rows();
  qubits_for_dim(static_cast<std::size_t>(ra * rb));
  CMatrix out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ra; ++j) {
      out.block(i * rb, j * rb, rb, rb) = a.entries_(i, j) * b.entries_;
    }
  }
  return UnitaryMatrix(std::move(out), UnitaryMatrix::Trusted{});
}

StateVector apply(const UnitaryMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw std::invalid_argument("apply: dimension mismatch");
  return StateVector(u.matrix() * psi.amplitudes(), StateVector::Trusted{});
}

double global_phase_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (u.dim() != v.dim()) return inf;
  const CMatrix& vm = v.matrix();
  Eigen::Index bi = 0;
  Eigen::Index bj = 0;
  double best = -1.0;
  for (Eigen::Index j = 0; j < vm.cols(); ++j) {
    for (Eigen::Index i = 0; i < vm.rows(); ++i) {
      if (std::abs(vm(i, j)) > best) {
        best = std::abs(vm(i, j));
        bi = i;
        bj = j;
      }
    }
  }
  if (best <= 0.0) return inf;
  const Complex ratio = u.matrix()(bi, bj) / vm(bi, bj);
  if (std::abs(ratio) == 0.0) return inf;
  const Complex c = ratio / std::abs(ratio);
  return (u.matrix() - c * vm).cwiseAbs().maxCoeff();
}

bool equal_up_to_global_phase(const UnitaryMatrix& u, const UnitaryMatrix& v, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return global_phase_distance(u, v) <= tol;
}

DensityMatrix pure_density(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), DensityMatrix::Trusted{});
}

DensityMatrix conjugate(const UnitaryMatrix& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
  return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint(),
                       DensityMatrix::Trusted{});
}

DensityMatrix diagonal_part(const DensityMatrix& rho) {
  CMatrix d = rho.matrix().diagonal().asDiagonal();
  return DensityMatrix(std::move(d), DensityMatrix::Trusted{});
}

}  // namespace fpsearch
