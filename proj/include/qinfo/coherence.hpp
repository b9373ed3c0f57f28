#pragma once

#include <optional>

#include "qinfo/entropy.hpp"

namespace qinfo {

// Reference basis for coherence quantifiers: the columns of a unitary.
// Coherence is basis-dependent, so every coherence result should be read
// against the basis it was computed in.
class BasisSpec {
 public:
  static BasisSpec computational(int dim) { return BasisSpec(ComplexMatrix::Identity(dim, dim)); }

  explicit BasisSpec(ComplexMatrix unitary) : unitary_(std::move(unitary)) {
    check_square(unitary_, "BasisSpec");
    if (max_abs(unitary_.adjoint() * unitary_ -
                ComplexMatrix::Identity(unitary_.rows(), unitary_.cols())) > tol::hermiticity)
      throw std::invalid_argument("BasisSpec: matrix is not unitary within tolerance");
  }

  const ComplexMatrix& unitary() const { return unitary_; }
  int dim() const { return static_cast<int>(unitary_.rows()); }

 private:
  ComplexMatrix unitary_;
};

namespace detail {
inline void check_basis(const DensityMatrix& rho, const BasisSpec& basis, const char* what) {
  if (basis.dim() != rho.dim())
    throw std::invalid_argument(std::string(what) + ": basis dimension mismatch");
}
}  // namespace detail

// Drops all off-diagonal terms in the given basis; idempotent.
inline DensityMatrix dephase(const DensityMatrix& rho, const BasisSpec& basis) {
  detail::check_basis(rho, basis, "dephase");
  ComplexMatrix in_basis = basis.unitary().adjoint() * rho.matrix() * basis.unitary();
  ComplexMatrix diag = in_basis.diagonal().asDiagonal();
  return DensityMatrix(basis.unitary() * diag * basis.unitary().adjoint());
}

inline DensityMatrix dephase(const DensityMatrix& rho) {
  return dephase(rho, BasisSpec::computational(rho.dim()));
}

// Sum of |rho_{m1,m2}| over m1 != m2 in the given basis.
inline double l1_coherence(const DensityMatrix& rho, const BasisSpec& basis) {
  detail::check_basis(rho, basis, "l1_coherence");
  ComplexMatrix in_basis = basis.unitary().adjoint() * rho.matrix() * basis.unitary();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < in_basis.rows(); ++i)
    for (Eigen::Index j = 0; j < in_basis.cols(); ++j)
      if (i != j) sum += std::abs(in_basis(i, j));
  return sum;
}

inline double l1_coherence(const DensityMatrix& rho) {
  return l1_coherence(rho, BasisSpec::computational(rho.dim()));
}

// S(dephase(rho)) - S(rho); nonnegative because dephasing is a PVM.
inline double relative_entropy_coherence(const DensityMatrix& rho, const BasisSpec& basis) {
  detail::check_basis(rho, basis, "relative_entropy_coherence");
  double value = von_neumann_entropy(dephase(rho, basis)) - von_neumann_entropy(rho);
  return value < 0.0 && value > -tol::support_cut ? 0.0 : value;
}

inline double relative_entropy_coherence(const DensityMatrix& rho) {
  return relative_entropy_coherence(rho, BasisSpec::computational(rho.dim()));
}

struct CorrelatorResult {
  Complex plain;      // Tr(rho O_A (x) O_B)
  Complex connected;  // plain - Tr(rho O_A (x) I) Tr(rho I (x) O_B)
};

// The operators are not required to be Hermitian; the complex values are
// returned unrounded.
inline CorrelatorResult two_point_correlator(const DensityMatrix& rho, const ComplexMatrix& op_a,
                                             const ComplexMatrix& op_b) {
  auto [dim_a, dim_b] = rho.require_split("two_point_correlator");
  if (op_a.rows() != dim_a || op_a.cols() != dim_a)
    throw std::invalid_argument("two_point_correlator: operator A dimension mismatch");
  if (op_b.rows() != dim_b || op_b.cols() != dim_b)
    throw std::invalid_argument("two_point_correlator: operator B dimension mismatch");
  CorrelatorResult result;
  result.plain = expectation(rho, tensor_product(op_a, op_b));
  Complex mean_a = expectation(rho, tensor_product(op_a, ComplexMatrix::Identity(dim_b, dim_b)));
  Complex mean_b = expectation(rho, tensor_product(ComplexMatrix::Identity(dim_a, dim_a), op_b));
  result.connected = result.plain - mean_a * mean_b;
  return result;
}

// Max-norm test of rho against the product of its own marginals.
inline bool is_uncorrelated(const DensityMatrix& rho, double tolerance = 1e-8) {
  auto [dim_a, dim_b] = rho.require_split("is_uncorrelated");
  ComplexMatrix rho_a = partial_trace(rho.matrix(), dim_a, dim_b, Subsystem::A);
  ComplexMatrix rho_b = partial_trace(rho.matrix(), dim_a, dim_b, Subsystem::B);
  return max_abs(rho.matrix() - tensor_product(rho_a, rho_b)) < tolerance;
}

}  // namespace qinfo
