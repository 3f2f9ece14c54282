#pragma once

#include <random>

#include <Eigen/QR>

#include "fpsearch/quantum_core.hpp"

namespace testing_support {

inline constexpr std::uint64_t kSeed = 0x5eed'f1d0'2005ULL;

// Haar-ish random unitary: QR of a complex Gaussian matrix with the R
// diagonal phases folded back into Q.
inline fpsearch::UnitaryMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  fpsearch::CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
  }
  Eigen::HouseholderQR<fpsearch::CMatrix> qr(m);
  fpsearch::CMatrix q = qr.householderQ();
  const fpsearch::CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return fpsearch::UnitaryMatrix(q);
}

inline fpsearch::StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  fpsearch::CVector v(dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {g(rng), g(rng)};
  return fpsearch::StateVector(v / v.norm());
}

}  // namespace testing_support
