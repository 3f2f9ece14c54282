#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fpsearch/quantum_core.hpp"
#include "support.hpp"

using namespace fpsearch;
using testing_support::kSeed;
using testing_support::random_state;
using testing_support::random_unitary;

namespace {

UnitaryMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return UnitaryMatrix(m);
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(StateVector, RejectsBadDimensionsAndNorm) {
  CVector three(3);
  three << 1, 0, 0;
  EXPECT_THROW(StateVector{three}, std::invalid_argument);
  CVector unnormalized(2);
  unnormalized << 1, 1;
  EXPECT_THROW(StateVector{unnormalized}, std::invalid_argument);
  EXPECT_THROW(StateVector::basis(2, 4), std::out_of_range);
}

TEST(StateVector, BasisIndexUsesQubitOneAsMsb) {
  const auto s = StateVector::basis(2, 2);  // |10>
  EXPECT_EQ(s.num_qubits(), 2);
  EXPECT_EQ(s[2], Complex(1.0));
  EXPECT_EQ(s[1], Complex(0.0));
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryMatrix{m}, std::invalid_argument);
  EXPECT_THROW(UnitaryMatrix{CMatrix::Identity(3, 3)}, std::invalid_argument);
}

TEST(TensorProduct, IdentityTimesIdentity) {
  const auto i4 = tensor_product(UnitaryMatrix::identity(2), UnitaryMatrix::identity(2));
  EXPECT_LE(max_abs(i4.matrix() - CMatrix::Identity(4, 4)), kAlgebraTol);
}

TEST(TensorProduct, XxFlipsBothQubits) {
  const auto xx = tensor_product(pauli_x(), pauli_x());
  const auto out = apply(xx, StateVector::basis(2, 0));
  EXPECT_NEAR(std::abs(out[3]), 1.0, kAlgebraTol);
}

TEST(TensorProduct, FactorsOverBasisProducts) {
  std::mt19937_64 rng(kSeed);
  const auto a = random_unitary(2, rng);
  const auto b = random_unitary(2, rng);
  const auto ab = tensor_product(a, b);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto lhs = apply(ab, StateVector::basis(2, 2 * i + j));
      const CVector ai = apply(a, StateVector::basis(1, i)).amplitudes();
      const CVector bj = apply(b, StateVector::basis(1, j)).amplitudes();
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          EXPECT_NEAR(std::abs(lhs[2 * p + q] - ai(p) * bj(q)), 0.0, kAlgebraTol);
        }
      }
    }
  }
}

TEST(Apply, IdentityAndPhaseOracle) {
  std::mt19937_64 rng(kSeed + 1);
  const auto psi = random_state(4, rng);
  const auto same = apply(UnitaryMatrix::identity(4), psi);
  EXPECT_LE((same.amplitudes() - psi.amplitudes()).norm(), kAlgebraTol);

  Eigen::VectorXd phases = Eigen::VectorXd::Zero(4);
  phases(3) = std::numbers::pi;
  const auto flipped = apply(UnitaryMatrix::diagonal_phases(phases), StateVector::basis(2, 3));
  EXPECT_NEAR(std::abs(flipped[3] - Complex(-1.0)), 0.0, kAlgebraTol);
}

TEST(Apply, DimensionMismatchThrows) {
  EXPECT_THROW(apply(UnitaryMatrix::identity(4), StateVector::basis(1, 0)), std::invalid_argument);
}

TEST(Apply, InverseRoundTripAndNormPreservation) {
  std::mt19937_64 rng(kSeed + 2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = std::size_t{1} << (1 + trial % 4);
    const auto u = random_unitary(dim, rng);
    const auto psi = random_state(dim, rng);
    const auto out = apply(u, psi);
    EXPECT_NEAR(out.norm(), 1.0, kAlgebraTol);
    const auto back = apply(u.adjoint() * u, psi);
    EXPECT_LE((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), kAlgebraTol);
    EXPECT_LE(u.unitarity_error(), kAlgebraTol);
  }
}

TEST(GlobalPhase, ScaledCopyIsEqual) {
  std::mt19937_64 rng(kSeed + 3);
  const auto u = random_unitary(4, rng);
  EXPECT_TRUE(equal_up_to_global_phase(u, u.scaled(std::polar(1.0, std::numbers::pi / 7)), 1e-10));
}

TEST(GlobalPhase, IdentityVsX) {
  EXPECT_FALSE(equal_up_to_global_phase(UnitaryMatrix::identity(2), pauli_x(), 0.5));
  EXPECT_FALSE(equal_up_to_global_phase(UnitaryMatrix::identity(2), pauli_x(), 0.999));
}

TEST(GlobalPhase, K1AndK3SameSignAreNotEqual) {
  const double phi = std::numbers::pi / 3;
  Eigen::VectorXd a(4), b(4);
  a << 0, 0, 0, phi;
  b << phi, phi, phi, 0;
  const auto ua = UnitaryMatrix::diagonal_phases(a);
  const auto ub = UnitaryMatrix::diagonal_phases(b);
  EXPECT_FALSE(equal_up_to_global_phase(ua, ub, 1e-6));
  double best = 1e9;
  for (int i = 0; i < 3600; ++i) {
    const Complex c = std::polar(1.0, 2 * std::numbers::pi * i / 3600.0);
    best = std::min(best, max_abs(ua.matrix() - c * ub.matrix()));
  }
  // Entry deviations are 2|sin((t + phi)/2)| and 2|sin((phi - t)/2)| for
  // c = exp(it); the max is smallest at t = 0, giving 2 sin(phi/2) = 1.
  EXPECT_NEAR(best, 2 * std::sin(phi / 2), 1e-9);
}

TEST(GlobalPhase, ReflexiveSymmetricAndPhaseInvariant) {
  std::mt19937_64 rng(kSeed + 4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_unitary(4, rng);
    const auto v = random_unitary(4, rng);
    const Complex c = std::polar(1.0, 0.37 * trial);
    EXPECT_TRUE(equal_up_to_global_phase(u, u, kAlgebraTol));
    EXPECT_EQ(equal_up_to_global_phase(u, v, 0.3), equal_up_to_global_phase(v, u, 0.3));
    EXPECT_TRUE(equal_up_to_global_phase(u.scaled(c), u, kAlgebraTol));
    EXPECT_TRUE(equal_up_to_global_phase(u, u.scaled(c), kAlgebraTol));
  }
}

TEST(GlobalPhase, NonPositiveToleranceThrows) {
  EXPECT_THROW(equal_up_to_global_phase(UnitaryMatrix::identity(2), UnitaryMatrix::identity(2), 0.0),
               std::invalid_argument);
}

TEST(GlobalPhase, DimensionMismatchIsInfinite) {
  EXPECT_TRUE(std::isinf(global_phase_distance(UnitaryMatrix::identity(2), UnitaryMatrix::identity(4))));
}

TEST(PureDensity, BasisAndSuperposition) {
  const auto rho = pure_density(StateVector::basis(2, 0));
  EXPECT_EQ(rho(0, 0), Complex(1.0));
  EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, kAlgebraTol);

  CVector v = CVector::Zero(4);
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  const auto sup = pure_density(StateVector(v));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(sup(i, j) - 0.5), 0.0, kAlgebraTol);
  }
  EXPECT_NEAR(std::abs(sup(2, 2)), 0.0, kAlgebraTol);
}

TEST(PureDensity, IdempotentWithUnitTrace) {
  std::mt19937_64 rng(kSeed + 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = pure_density(random_state(8, rng));
    EXPECT_LE(max_abs(rho.matrix() * rho.matrix() - rho.matrix()), kAlgebraTol);
    EXPECT_NEAR(std::abs(rho.trace() - 1.0), 0.0, kAlgebraTol);
  }
}

TEST(DensityMatrix, ValidatesInvariants) {
  CMatrix not_hermitian = CMatrix::Zero(2, 2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.2;
  EXPECT_THROW(DensityMatrix{not_hermitian}, std::invalid_argument);
  CMatrix negative = CMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{negative}, std::invalid_argument);
  EXPECT_THROW(DensityMatrix{CMatrix::Identity(2, 2)}, std::invalid_argument);  // trace 2
}

TEST(DensityMatrix, ConjugationPreservesTrace) {
  std::mt19937_64 rng(kSeed + 6);
  const auto rho = pure_density(random_state(4, rng));
  const auto out = conjugate(random_unitary(4, rng), rho);
  EXPECT_NEAR(std::abs(out.trace() - 1.0), 0.0, kAlgebraTol);
  const auto mixed = conjugate(random_unitary(4, rng), DensityMatrix::maximally_mixed(4));
  EXPECT_LE(max_abs(mixed.matrix() - CMatrix::Identity(4, 4) / 4.0), kAlgebraTol);
}
