#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qinfo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Central tolerances. All states and operators handled here are unit-scale
// (density matrices, projectors, Pauli words), so absolute thresholds are used.
namespace tol {
inline constexpr double hermiticity = 1e-8;        // max-norm of m - m^dagger
inline constexpr double eigenvalue_clip = 1e-9;    // negatives above -clip are noise
inline constexpr double unit_trace = 1e-10;
inline constexpr double normalization = 1e-10;
inline constexpr double probability_sum = 1e-10;
inline constexpr double support_cut = 1e-12;       // eigenvalues below this count as zero
inline constexpr double support_overlap = 1e-10;   // weight outside support that forces +inf
inline constexpr double degeneracy = 1e-8;         // eigenvalue merging in spectral PVMs
inline constexpr double outcome_probability = 1e-12;  // below this, no post-state
inline constexpr double witness_verdict = 1e-9;
inline constexpr double axis_unit = 1e-10;
inline constexpr double axis_renormalize = 1e-6;
inline constexpr double bloch_renormalize = 1e-9;
}  // namespace tol

enum class Subsystem { A, B };

inline const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  return m;
}

inline const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
  }();
  return m;
}

inline const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return s;
  }();
  return m;
}

inline const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

inline bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermiticity) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

inline void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline void check_bipartite_dims(const ComplexMatrix& m, int dim_a, int dim_b, const char* what) {
  check_square(m, what);
  if (dim_a <= 0 || dim_b <= 0)
    throw std::invalid_argument(std::string(what) + ": subsystem dimensions must be positive");
  if (m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch, matrix is " +
                                std::to_string(m.rows()) + "-dimensional but split is " +
                                std::to_string(dim_a) + "x" + std::to_string(dim_b));
}

// Kronecker product; subsystem A is the slower-varying index, so row i_A*b.rows()+i_B
// of the result addresses |i_A>|i_B>.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b,
                                   Subsystem keep) {
  check_bipartite_dims(m, dim_a, dim_b, "partial_trace");
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

// Transposes the indices of one subsystem only. Involutive; preserves trace
// and Hermiticity.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int dim_a, int dim_b,
                                       Subsystem on) {
  check_bipartite_dims(m, dim_a, dim_b, "partial_transpose");
  ComplexMatrix out(m.rows(), m.cols());
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ib = 0; ib < dim_b; ++ib)
      for (int ja = 0; ja < dim_a; ++ja)
        for (int jb = 0; jb < dim_b; ++jb) {
          if (on == Subsystem::B)
            out(ia * dim_b + ib, ja * dim_b + jb) = m(ia * dim_b + jb, ja * dim_b + ib);
          else
            out(ia * dim_b + ib, ja * dim_b + jb) = m(ja * dim_b + ib, ia * dim_b + jb);
        }
  return out;
}

struct HermitianSpectrum {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // orthonormal columns, paired with eigenvalues
};

inline HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  check_square(m, "hermitian_eig");
  if (!is_hermitian(m))
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance " +
                                std::to_string(tol::hermiticity));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigendecomposition failed to converge");
  // Eigen returns ascending order; the convention here is descending everywhere.
  HermitianSpectrum spec;
  spec.eigenvalues = solver.eigenvalues().reverse();
  spec.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return spec;
}

// sum_k f(lambda_k) v_k v_k^dagger. Eigenvalues in [-eigenvalue_clip,
// support_cut) are treated as exact zeros; the square root would otherwise
// blow eigensolver noise up to its square root.
inline ComplexMatrix matrix_sqrt(const ComplexMatrix& m) {
  HermitianSpectrum spec = hermitian_eig(m);
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    double lambda = spec.eigenvalues(k);
    if (lambda < -tol::eigenvalue_clip)
      throw std::invalid_argument("matrix_sqrt: negative eigenvalue " + std::to_string(lambda));
    if (lambda < tol::support_cut) continue;
    out += std::sqrt(lambda) * (spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint());
  }
  return out;
}

// Logarithm restricted to the support: eigenvalues at or below support_cut are excluded.
inline ComplexMatrix matrix_log(const ComplexMatrix& m) {
  HermitianSpectrum spec = hermitian_eig(m);
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    double lambda = spec.eigenvalues(k);
    if (lambda <= tol::support_cut) continue;
    out += std::log(lambda) * (spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint());
  }
  return out;
}

// Tr sqrt(m^dagger m), the sum of singular values.
inline double trace_norm(const ComplexMatrix& m) {
  check_square(m, "trace_norm");
  if (is_hermitian(m)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

}  // namespace qinfo
