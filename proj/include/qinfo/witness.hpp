#pragma once

#include <string>

#include "qinfo/states.hpp"

namespace qinfo {

// Unit vector fixing a spin measurement direction. Vectors within 1e-6 of
// unit length are renormalized; anything further off is rejected rather than
// silently fixed.
class MeasurementAxis {
 public:
  MeasurementAxis(double x, double y, double z) : x_(x), y_(y), z_(z) {
    double len = std::sqrt(x_ * x_ + y_ * y_ + z_ * z_);
    if (!std::isfinite(len) || std::abs(len - 1.0) > tol::axis_renormalize)
      throw std::invalid_argument("MeasurementAxis: vector length " + std::to_string(len) +
                                  " is not 1");
    x_ /= len;
    y_ /= len;
    z_ /= len;
  }

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  // alpha . sigma
  ComplexMatrix spin_operator() const {
    return x_ * pauli_x() + y_ * pauli_y() + z_ * pauli_z();
  }

 private:
  double x_, y_, z_;
};

struct LinearWitness {
  ComplexMatrix op;
  std::string description;
};

enum class WitnessVerdict { entangled, inconclusive };

inline const char* to_string(WitnessVerdict verdict) {
  return verdict == WitnessVerdict::entangled ? "entangled" : "inconclusive";
}

// Tr(rho (alpha . sigma) (x) (beta . sigma)), in [-1, 1].
inline double spin_correlator(const DensityMatrix& rho, const MeasurementAxis& alpha,
                              const MeasurementAxis& beta) {
  if (rho.dim() != 4)
    throw std::invalid_argument("spin_correlator: requires a two-qubit state");
  return expectation(rho, tensor_product(alpha.spin_operator(), beta.spin_operator())).real();
}

// W = 2I + s^{a2} s^{b2} - s^{a1} s^{b1} - s^{a2} s^{b1} - s^{a1} s^{b2};
// Tr(W rho) >= 0 on every separable two-qubit state.
inline LinearWitness chsh_witness(const MeasurementAxis& a1, const MeasurementAxis& a2,
                                  const MeasurementAxis& b1, const MeasurementAxis& b2) {
  ComplexMatrix sa1 = a1.spin_operator();
  ComplexMatrix sa2 = a2.spin_operator();
  ComplexMatrix sb1 = b1.spin_operator();
  ComplexMatrix sb2 = b2.spin_operator();
  LinearWitness witness;
  witness.op = 2.0 * ComplexMatrix::Identity(4, 4) + tensor_product(sa2, sb2) -
               tensor_product(sa1, sb1) - tensor_product(sa2, sb1) - tensor_product(sa1, sb2);
  witness.description = "CHSH witness";
  return witness;
}

// A negative value certifies entanglement; a nonnegative one decides nothing,
// so the verdict is never "separable".
inline std::pair<double, WitnessVerdict> evaluate_witness(const LinearWitness& witness,
                                                          const DensityMatrix& rho) {
  if (witness.op.rows() != rho.dim() || witness.op.cols() != rho.dim())
    throw std::invalid_argument("evaluate_witness: dimension mismatch");
  if (!is_hermitian(witness.op))
    throw std::invalid_argument("evaluate_witness: witness operator is not Hermitian");
  double value = expectation(rho, witness.op).real();
  return {value, value < -tol::witness_verdict ? WitnessVerdict::entangled
                                               : WitnessVerdict::inconclusive};
}

}  // namespace qinfo
