#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "qinfo/states.hpp"

namespace qinfo {

using Rng = std::mt19937_64;

// Box-Muller on raw mt19937_64 output, so sampled states are reproducible
// across standard libraries (std::normal_distribution is not pinned by the
// standard).
inline double gaussian(Rng& rng) {
  double u1 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Complex complex_gaussian(Rng& rng) {
  double re = gaussian(rng);
  double im = gaussian(rng);
  return Complex(re, im);
}

inline ComplexMatrix ginibre_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = complex_gaussian(rng);
  return g;
}

// Normalized complex-Gaussian vector: the unitarily invariant distribution on
// pure states.
inline PureState random_pure_state(int dim, Rng& rng) {
  if (dim <= 0) throw std::invalid_argument("random_pure_state: dimension must be positive");
  return normalized(ginibre_matrix(dim, 1, rng).col(0));
}

// G G^dagger / Tr(G G^dagger) with G a dim x rank Ginibre matrix.
inline DensityMatrix random_density_matrix(int dim, int rank, Rng& rng) {
  if (dim <= 0) throw std::invalid_argument("random_density_matrix: dimension must be positive");
  if (rank < 1 || rank > dim)
    throw std::invalid_argument("random_density_matrix: rank must lie in [1, dim]");
  ComplexMatrix g = ginibre_matrix(dim, rank, rng);
  ComplexMatrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases
// folded into Q.
inline ComplexMatrix random_unitary(int dim, Rng& rng) {
  ComplexMatrix g = ginibre_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    Complex d = r(k, k);
    double mag = std::abs(d);
    q.col(k) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

inline PureState random_product_pure(int dim_a, int dim_b, Rng& rng) {
  PureState a = random_pure_state(dim_a, rng);
  PureState b = random_pure_state(dim_b, rng);
  return PureState(tensor_product(a.amplitudes(), b.amplitudes()));
}

// Convex mixture of random product pure states; weights are uniform on the
// simplex. Separable by construction.
inline DensityMatrix random_separable(int dim_a, int dim_b, int terms, Rng& rng) {
  if (terms < 1) throw std::invalid_argument("random_separable: need at least one term");
  std::vector<double> weights(terms);
  double sum = 0.0;
  for (double& w : weights) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    w = -std::log(u > 0.0 ? u : 0x1.0p-53);
    sum += w;
  }
  ComplexMatrix rho = ComplexMatrix::Zero(dim_a * dim_b, dim_a * dim_b);
  for (int i = 0; i < terms; ++i) {
    PureState product = random_product_pure(dim_a, dim_b, rng);
    rho += (weights[i] / sum) * (product.amplitudes() * product.amplitudes().adjoint());
  }
  return DensityMatrix(std::move(rho), dim_a, dim_b);
}

}  // namespace qinfo
