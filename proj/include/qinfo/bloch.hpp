#pragma once

#include <algorithm>
#include <numbers>

#include "qinfo/states.hpp"

namespace qinfo {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double length() const { return std::sqrt(x * x + y * y + z * z); }
};

// cos(theta/2)|0> + sin(theta/2) e^{i phi} |1>, the polar/azimuth parameterization.
inline PureState from_angles(double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  if (!(theta >= 0.0 && theta <= pi))
    throw std::invalid_argument("from_angles: theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * pi))
    throw std::invalid_argument("from_angles: phi must lie in [0, 2*pi)");
  ComplexVector amps(2);
  amps << std::cos(theta / 2.0),
      std::sin(theta / 2.0) * std::exp(Complex(0.0, phi));
  return normalized(std::move(amps));
}

// r_alpha = Tr(sigma_alpha rho)
inline BlochVector to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    throw std::invalid_argument("to_bloch: requires a single-qubit state, dim = " +
                                std::to_string(rho.dim()));
  return BlochVector{expectation(rho, pauli_x()).real(),
                     expectation(rho, pauli_y()).real(),
                     expectation(rho, pauli_z()).real()};
}

namespace detail {
// Lengths in (1, 1 + bloch_renormalize] are squeezed back onto the sphere;
// anything longer has no PSD state.
inline BlochVector clamp_bloch_length(BlochVector r, const char* what) {
  double len = r.length();
  if (len > 1.0 + tol::bloch_renormalize)
    throw std::invalid_argument(std::string(what) + ": Bloch vector length " +
                                std::to_string(len) + " exceeds 1");
  if (len > 1.0) {
    r.x /= len;
    r.y /= len;
    r.z /= len;
  }
  return r;
}
}  // namespace detail

// (I + r . sigma) / 2
inline DensityMatrix from_bloch(const BlochVector& r) {
  BlochVector v = detail::clamp_bloch_length(r, "from_bloch");
  ComplexMatrix rho = 0.5 * (ComplexMatrix::Identity(2, 2) + v.x * pauli_x() +
                             v.y * pauli_y() + v.z * pauli_z());
  return DensityMatrix(std::move(rho));
}

// Eigendecomposition {(1+r)/2, (1-r)/2} with eigenvectors along +-r. The
// direction is undefined at r = 0, which is rejected.
inline HermitianSpectrum bloch_spectrum(const BlochVector& r) {
  BlochVector v = detail::clamp_bloch_length(r, "bloch_spectrum");
  double len = v.length();
  if (len == 0.0)
    throw std::invalid_argument("bloch_spectrum: zero vector has no eigenbasis direction");

  constexpr double pi = std::numbers::pi;
  double theta = std::acos(std::clamp(v.z / len, -1.0, 1.0));
  double phi = std::atan2(v.y, v.x);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi = 0.0;
  double phi_opposite = phi + pi;
  if (phi_opposite >= 2.0 * pi) phi_opposite -= 2.0 * pi;

  HermitianSpectrum spec;
  spec.eigenvalues = RealVector(2);
  spec.eigenvalues << (1.0 + len) / 2.0, (1.0 - len) / 2.0;
  spec.eigenvectors = ComplexMatrix(2, 2);
  spec.eigenvectors.col(0) = from_angles(theta, phi).amplitudes();
  spec.eigenvectors.col(1) = from_angles(pi - theta, phi_opposite).amplitudes();
  return spec;
}

}  // namespace qinfo
