#pragma once

#include "qinfo/qinfo.hpp"

namespace helpers {

inline qinfo::PureState ket(std::initializer_list<qinfo::Complex> amplitudes) {
  qinfo::ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (const auto& a : amplitudes) v(i++) = a;
  return qinfo::normalized(std::move(v));
}

inline qinfo::PureState bell_phi_plus() { return ket({1, 0, 0, 1}); }
inline qinfo::PureState singlet() { return ket({0, 1, -1, 0}); }

// 1/2 (|00><00| + |11><11|): correlated, separable, diagonal.
inline qinfo::DensityMatrix rho1() {
  qinfo::ComplexMatrix m = qinfo::ComplexMatrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return qinfo::DensityMatrix(m, 2, 2);
}

inline qinfo::DensityMatrix rho2() {
  return qinfo::from_pure(bell_phi_plus()).with_split(2, 2);
}

inline qinfo::DensityMatrix werner(double p) {
  qinfo::ComplexMatrix m = p * qinfo::from_pure(bell_phi_plus()).matrix() +
                           (1.0 - p) * qinfo::ComplexMatrix::Identity(4, 4) / 4.0;
  return qinfo::DensityMatrix(m, 2, 2);
}

inline qinfo::DensityMatrix maximally_mixed(int dim) {
  return qinfo::DensityMatrix(qinfo::ComplexMatrix::Identity(dim, dim) / dim);
}

}  // namespace helpers
