// Brute-force reference computations for the test suite. Everything here is
// written against Eigen directly and stays independent of the library code
// paths it is used to check.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline MatrixXcd partial_transpose_b(const MatrixXcd& m, int da, int db) {
  MatrixXcd out(m.rows(), m.cols());
  for (int ia = 0; ia < da; ++ia)
    for (int ib = 0; ib < db; ++ib)
      for (int ja = 0; ja < da; ++ja)
        for (int jb = 0; jb < db; ++jb)
          out(ia * db + ib, ja * db + jb) = m(ia * db + jb, ja * db + ib);
  return out;
}

inline std::vector<double> pt_eigenvalues(const MatrixXcd& rho, int da, int db) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(partial_transpose_b(rho, da, db));
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(eigs.rbegin(), eigs.rend());
  return eigs;
}

inline double negativity(const MatrixXcd& rho, int da, int db) {
  double sum = 0.0;
  for (double e : pt_eigenvalues(rho, da, db)) sum += std::abs(e);
  return (sum - 1.0) / 2.0;
}

// Eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)) equal the square roots of
// the eigenvalues of rho * rho~, which avoids any matrix square root here.
inline std::vector<double> concurrence_spectrum(const MatrixXcd& rho) {
  MatrixXcd sy(2, 2);
  sy << 0.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0.0;
  MatrixXcd yy = kron(sy, sy);
  MatrixXcd product = rho * (yy * rho.conjugate() * yy);
  Eigen::ComplexEigenSolver<MatrixXcd> solver(product);
  std::vector<double> lambdas;
  for (Eigen::Index k = 0; k < 4; ++k)
    lambdas.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(k).real())));
  std::sort(lambdas.rbegin(), lambdas.rend());
  return lambdas;
}

inline double concurrence(const MatrixXcd& rho) {
  auto l = concurrence_spectrum(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

}  // namespace oracles
