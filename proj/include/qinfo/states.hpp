#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qinfo/matrix.hpp"

namespace qinfo {

class PureState {
 public:
  explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0)
      throw std::invalid_argument("PureState: empty amplitude vector");
    if (!amplitudes_.allFinite())
      throw std::invalid_argument("PureState: amplitudes contain NaN or Inf");
    double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol::normalization)
      throw std::invalid_argument("PureState: not normalized, |psi|^2 = " +
                                  std::to_string(norm2));
  }

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int k) const { return amplitudes_(k); }

 private:
  ComplexVector amplitudes_;
};

inline PureState normalized(ComplexVector amplitudes) {
  double n = amplitudes.norm();
  if (n <= 0.0 || !std::isfinite(n))
    throw std::invalid_argument("normalized: vector has no usable norm");
  return PureState(amplitudes / n);
}

// Hermitian, positive semi-definite, unit-trace operator. Validated on
// construction; optionally carries a bipartite (dim_a, dim_b) split.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) { validate(); }

  DensityMatrix(ComplexMatrix m, int dim_a, int dim_b)
      : matrix_(std::move(m)), split_(std::make_pair(dim_a, dim_b)) {
    validate();
    check_bipartite_dims(matrix_, dim_a, dim_b, "DensityMatrix");
  }

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::optional<std::pair<int, int>>& split() const { return split_; }

  DensityMatrix with_split(int dim_a, int dim_b) const {
    return DensityMatrix(matrix_, dim_a, dim_b);
  }

  std::pair<int, int> require_split(const char* what) const {
    if (!split_)
      throw std::invalid_argument(std::string(what) + ": state carries no bipartite split");
    return *split_;
  }

  // Reduced state of the kept subsystem; requires the split.
  DensityMatrix reduced(Subsystem keep) const {
    auto [da, db] = require_split("reduced");
    return DensityMatrix(partial_trace(matrix_, da, db, keep));
  }

 private:
  void validate() const {
    if (matrix_.rows() == 0)
      throw std::invalid_argument("DensityMatrix: empty matrix");
    check_square(matrix_, "DensityMatrix");
    if (!is_finite(matrix_))
      throw std::invalid_argument("DensityMatrix: entries contain NaN or Inf");
    if (!is_hermitian(matrix_))
      throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    double trace = matrix_.trace().real();
    if (std::abs(trace - 1.0) > tol::unit_trace)
      throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(trace) +
                                  ", expected 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol::eigenvalue_clip)
      throw std::invalid_argument("DensityMatrix: not positive semi-definite, eigenvalue " +
                                  std::to_string(min_eig));
  }

  ComplexMatrix matrix_;
  std::optional<std::pair<int, int>> split_;
};

// Ensembles may mix non-orthogonal states; only probabilities and shared
// dimension are checked.
class Ensemble {
 public:
  explicit Ensemble(std::vector<std::pair<double, PureState>> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("Ensemble: no entries");
    double sum = 0.0;
    int d = entries_.front().second.dim();
    for (const auto& [p, psi] : entries_) {
      if (p < 0.0) throw std::invalid_argument("Ensemble: negative probability");
      if (psi.dim() != d)
        throw std::invalid_argument("Ensemble: member states have mismatched dimensions");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol::probability_sum)
      throw std::invalid_argument("Ensemble: probabilities sum to " + std::to_string(sum));
  }

  const std::vector<std::pair<double, PureState>>& entries() const { return entries_; }
  int dim() const { return entries_.front().second.dim(); }

 private:
  std::vector<std::pair<double, PureState>> entries_;
};

// |psi><psi|; the global phase of psi drops out.
inline DensityMatrix from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

inline DensityMatrix from_ensemble(const Ensemble& e) {
  ComplexMatrix rho = ComplexMatrix::Zero(e.dim(), e.dim());
  for (const auto& [p, psi] : e.entries())
    rho += p * (psi.amplitudes() * psi.amplitudes().adjoint());
  return DensityMatrix(std::move(rho));
}

inline DensityMatrix convex_combine(const std::vector<double>& weights,
                                    const std::vector<DensityMatrix>& states) {
  if (weights.size() != states.size() || states.empty())
    throw std::invalid_argument("convex_combine: need matching, nonempty weights and states");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("convex_combine: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::probability_sum)
    throw std::invalid_argument("convex_combine: weights sum to " + std::to_string(sum));
  int d = states.front().dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d)
      throw std::invalid_argument("convex_combine: states have mismatched dimensions");
    rho += weights[i] * states[i].matrix();
  }
  return DensityMatrix(std::move(rho));
}

// Tr(O rho). Real within tolerance when O is Hermitian, but returned as-is.
inline Complex expectation(const DensityMatrix& rho, const ComplexMatrix& o) {
  if (o.rows() != rho.dim() || o.cols() != rho.dim())
    throw std::invalid_argument("expectation: operator dimension mismatch");
  return (o * rho.matrix()).trace();
}

inline double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

// Eigenvalues of a state form a probability distribution; tiny negatives from
// finite precision are clipped to zero.
inline HermitianSpectrum spectrum(const DensityMatrix& rho) {
  HermitianSpectrum spec = hermitian_eig(rho.matrix());
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k)
    if (spec.eigenvalues(k) < 0.0) spec.eigenvalues(k) = 0.0;
  return spec;
}

// sum_x |<x|psi>|^4 in the given site basis (columns of `basis`), defaulting
// to the computational basis.
inline double ipr(const PureState& psi, const std::optional<ComplexMatrix>& basis = {}) {
  ComplexVector overlaps;
  if (basis) {
    if (basis->rows() != psi.dim() || basis->cols() != psi.dim())
      throw std::invalid_argument("ipr: basis dimension mismatch");
    if (max_abs(basis->adjoint() * (*basis) - ComplexMatrix::Identity(psi.dim(), psi.dim())) >
        tol::hermiticity)
      throw std::invalid_argument("ipr: basis is not unitary within tolerance");
    overlaps = basis->adjoint() * psi.amplitudes();
  } else {
    overlaps = psi.amplitudes();
  }
  double sum = 0.0;
  for (Eigen::Index k = 0; k < overlaps.size(); ++k) {
    double p = std::norm(overlaps(k));
    sum += p * p;
  }
  return sum;
}

}  // namespace qinfo
