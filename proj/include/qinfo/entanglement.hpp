#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qinfo/entropy.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

struct SchmidtDecomposition {
  RealVector coefficients;  // sqrt(lambda_n), nonnegative, descending
  ComplexMatrix basis_a;    // orthonormal columns |alpha_n>
  ComplexMatrix basis_b;    // orthonormal columns |beta_n>

  ComplexVector reconstruct() const {
    ComplexVector psi = ComplexVector::Zero(basis_a.rows() * basis_b.rows());
    for (Eigen::Index n = 0; n < coefficients.size(); ++n)
      psi += coefficients(n) * tensor_product(ComplexVector(basis_a.col(n)),
                                              ComplexVector(basis_b.col(n)));
    return psi;
  }
};

namespace detail {

// Largest-magnitude component made real positive; the compensating phase must
// go somewhere, so the caller pushes it into the partner vector.
inline Complex canonical_phase(const ComplexVector& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  Complex c = v(imax);
  double mag = std::abs(c);
  return mag > 0.0 ? c / mag : Complex(1.0, 0.0);
}

inline bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > 1e-12) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > 1e-12) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace detail

// Bipartite pure-state decomposition psi = sum_n c_n |alpha_n> (x) |beta_n>
// via the SVD of the coefficient matrix; the squared coefficients are the
// eigenvalues of either reduced density matrix.
inline SchmidtDecomposition schmidt_decompose(const PureState& psi, int dim_a, int dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || psi.dim() != dim_a * dim_b)
    throw std::invalid_argument("schmidt_decompose: state dimension " +
                                std::to_string(psi.dim()) + " does not factor as " +
                                std::to_string(dim_a) + "x" + std::to_string(dim_b));
  ComplexMatrix coeff(dim_a, dim_b);
  for (int ia = 0; ia < dim_a; ++ia)
    for (int ib = 0; ib < dim_b; ++ib) coeff(ia, ib) = psi.amplitude(ia * dim_b + ib);

  Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.basis_a = svd.matrixU();
  out.basis_b = svd.matrixV().conjugate();

  for (Eigen::Index n = 0; n < out.coefficients.size(); ++n) {
    Complex phase = detail::canonical_phase(out.basis_a.col(n));
    out.basis_a.col(n) /= phase;
    out.basis_b.col(n) *= phase;
  }

  // Deterministic order inside degenerate coefficient groups.
  Eigen::Index n = 0;
  while (n < out.coefficients.size()) {
    Eigen::Index end = n + 1;
    while (end < out.coefficients.size() &&
           out.coefficients(n) - out.coefficients(end) <= 1e-12)
      ++end;
    if (end - n > 1) {
      std::vector<Eigen::Index> order(end - n);
      std::iota(order.begin(), order.end(), n);
      std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return detail::lex_less(out.basis_a.col(i), out.basis_a.col(j));
      });
      ComplexMatrix a_group(out.basis_a.rows(), end - n);
      ComplexMatrix b_group(out.basis_b.rows(), end - n);
      for (Eigen::Index i = 0; i < end - n; ++i) {
        a_group.col(i) = out.basis_a.col(order[i]);
        b_group.col(i) = out.basis_b.col(order[i]);
      }
      out.basis_a.middleCols(n, end - n) = a_group;
      out.basis_b.middleCols(n, end - n) = b_group;
    }
    n = end;
  }
  return out;
}

// Count of Schmidt coefficients above `cutoff`; > 1 means entangled.
inline int schmidt_number(const PureState& psi, int dim_a, int dim_b, double cutoff = 1e-8) {
  SchmidtDecomposition schmidt = schmidt_decompose(psi, dim_a, dim_b);
  int count = 0;
  for (Eigen::Index n = 0; n < schmidt.coefficients.size(); ++n)
    if (schmidt.coefficients(n) > cutoff) ++count;
  return count;
}

// Von Neumann entropy of either reduced state, -sum lambda_n ln lambda_n.
inline double entanglement_entropy(const PureState& psi, int dim_a, int dim_b) {
  SchmidtDecomposition schmidt = schmidt_decompose(psi, dim_a, dim_b);
  double s = 0.0;
  for (Eigen::Index n = 0; n < schmidt.coefficients.size(); ++n) {
    double lambda = schmidt.coefficients(n) * schmidt.coefficients(n);
    if (lambda > tol::support_cut) s -= lambda * std::log(lambda);
  }
  return s;
}

namespace detail {
inline void check_two_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4)
    throw std::invalid_argument(std::string(what) + ": requires a two-qubit state");
  if (rho.split() && *rho.split() != std::pair<int, int>(2, 2))
    throw std::invalid_argument(std::string(what) + ": split must be 2x2");
}
}  // namespace detail

// Two-qubit concurrence from the eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)),
// where rho~ = (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y) and the
// conjugation is taken in the computational basis.
inline double concurrence(const DensityMatrix& rho) {
  detail::check_two_qubit(rho, "concurrence");
  static const ComplexMatrix yy = tensor_product(pauli_y(), pauli_y());
  ComplexMatrix rho_tilde = yy * rho.matrix().conjugate() * yy;
  ComplexMatrix sqrt_rho = matrix_sqrt(rho.matrix());
  ComplexMatrix inner = sqrt_rho * rho_tilde * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());
  // Eigenvalues of R are the square roots of the eigenvalues of inner. The
  // noise floor is cut before the root, which would otherwise amplify
  // O(1e-16) eigensolver error to O(1e-8) per vanishing eigenvalue.
  HermitianSpectrum spec = hermitian_eig(inner);
  double c = 0.0;
  for (Eigen::Index k = 0; k < 4; ++k) {
    double lambda = spec.eigenvalues(k) > 1e-13 ? std::sqrt(spec.eigenvalues(k)) : 0.0;
    c += k == 0 ? lambda : -lambda;
  }
  return std::clamp(c, 0.0, 1.0);
}

// Closed form for two qubits: the binary Shannon entropy of
// (1 +- sqrt(1 - C^2)) / 2.
inline double entanglement_of_formation_2q(const DensityMatrix& rho) {
  double c = concurrence(rho);
  double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return shannon_entropy(ProbabilityDistribution({(1.0 + s) / 2.0, (1.0 - s) / 2.0}));
}

// (||PT_B(rho)||_1 - 1) / 2; zero on every PPT (in particular separable) state.
inline double negativity(const DensityMatrix& rho) {
  auto [dim_a, dim_b] = rho.require_split("negativity");
  double tn = trace_norm(partial_transpose(rho.matrix(), dim_a, dim_b, Subsystem::B));
  return std::max(0.0, (tn - 1.0) / 2.0);
}

// Positivity of the partial transpose. Necessary for separability in any
// dimension; also sufficient for 2x2 and 2x3 splits.
inline bool is_ppt(const DensityMatrix& rho) {
  auto [dim_a, dim_b] = rho.require_split("is_ppt");
  ComplexMatrix pt = partial_transpose(rho.matrix(), dim_a, dim_b, Subsystem::B);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(pt, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol::eigenvalue_clip;
}

inline bool ppt_decides_separability(int dim_a, int dim_b) { return dim_a * dim_b <= 6; }

namespace detail {

// Separable candidate sigma = sum_i w_i |a_i><a_i| (x) |b_i><b_i| used by the
// relative-entropy-of-entanglement search.
struct ProductEnsemble {
  std::vector<double> weights;
  std::vector<ComplexVector> kets_a;
  std::vector<ComplexVector> kets_b;

  ComplexMatrix assemble(int dim) const {
    ComplexMatrix sigma = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      ComplexVector product = tensor_product(kets_a[i], kets_b[i]);
      sigma += weights[i] * (product * product.adjoint());
    }
    return sigma;
  }

  void normalize_weights() {
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (sum <= 0.0) return;
    for (double& w : weights) w /= sum;
  }

  void pad_to(std::size_t size, int dim_a, int dim_b, Rng& rng) {
    while (weights.size() < size) {
      weights.push_back(0.0);
      kets_a.push_back(random_pure_state(dim_a, rng).amplitudes());
      kets_b.push_back(random_pure_state(dim_b, rng).amplitudes());
    }
  }
};

inline double er_objective(const DensityMatrix& rho, const ProductEnsemble& ensemble) {
  try {
    DensityMatrix sigma(ensemble.assemble(rho.dim()));
    return relative_entropy(rho, sigma);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Dephasing of rho in an orthonormal product basis is always separable and,
// whenever rho is a state, has support containing rho's, so the objective
// stays finite.
inline ProductEnsemble product_dephase_ensemble(const DensityMatrix& rho,
                                                const ComplexMatrix& basis_a,
                                                const ComplexMatrix& basis_b) {
  ProductEnsemble ensemble;
  for (Eigen::Index n = 0; n < basis_a.cols(); ++n)
    for (Eigen::Index m = 0; m < basis_b.cols(); ++m) {
      ComplexVector product =
          tensor_product(ComplexVector(basis_a.col(n)), ComplexVector(basis_b.col(m)));
      double w = (product.adjoint() * rho.matrix() * product)(0).real();
      ensemble.weights.push_back(std::max(0.0, w));
      ensemble.kets_a.push_back(basis_a.col(n));
      ensemble.kets_b.push_back(basis_b.col(m));
    }
  ensemble.normalize_weights();
  return ensemble;
}

}  // namespace detail

// Upper bound on the relative entropy of entanglement,
// min over separable sigma of Tr(rho ln rho) - Tr(rho ln sigma).
//
// Deterministic warm starts (computational dephasing, product of marginals,
// dephasing in the Schmidt product basis of the dominant eigenvector) are
// followed by seeded stochastic coordinate refinement of a product ensemble
// with 2 * dim_a * dim_b members. Restarts alternate between fresh random
// ensembles and the best candidate so far. The result is an upper bound for
// any budget, deterministic given the seed, and nonincreasing in the budget
// because a larger budget only extends the same search trajectory.
inline double relative_entropy_of_entanglement_ub(const DensityMatrix& rho, int budget = 4000,
                                                  std::uint64_t seed = 1) {
  auto [dim_a, dim_b] = rho.require_split("relative_entropy_of_entanglement_ub");
  if (dim_a > 4 || dim_b > 4)
    throw std::invalid_argument(
        "relative_entropy_of_entanglement_ub: subsystem dimensions above 4 are not supported");
  if (budget < 0)
    throw std::invalid_argument("relative_entropy_of_entanglement_ub: negative budget");

  const int dim = dim_a * dim_b;
  const std::size_t ensemble_size = static_cast<std::size_t>(2 * dim);
  const int restart_period = 500;
  Rng rng(seed);

  std::vector<detail::ProductEnsemble> warm_starts;
  warm_starts.push_back(detail::product_dephase_ensemble(
      rho, ComplexMatrix::Identity(dim_a, dim_a), ComplexMatrix::Identity(dim_b, dim_b)));
  {
    HermitianSpectrum spec_a =
        hermitian_eig(partial_trace(rho.matrix(), dim_a, dim_b, Subsystem::A));
    HermitianSpectrum spec_b =
        hermitian_eig(partial_trace(rho.matrix(), dim_a, dim_b, Subsystem::B));
    detail::ProductEnsemble marginals;
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_b; ++j) {
        marginals.weights.push_back(
            std::max(0.0, spec_a.eigenvalues(i)) * std::max(0.0, spec_b.eigenvalues(j)));
        marginals.kets_a.push_back(spec_a.eigenvectors.col(i));
        marginals.kets_b.push_back(spec_b.eigenvectors.col(j));
      }
    marginals.normalize_weights();
    warm_starts.push_back(std::move(marginals));
  }
  {
    HermitianSpectrum spec = hermitian_eig(rho.matrix());
    ComplexMatrix coeff(dim_a, dim_b);
    for (int ia = 0; ia < dim_a; ++ia)
      for (int ib = 0; ib < dim_b; ++ib) coeff(ia, ib) = spec.eigenvectors(ia * dim_b + ib, 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    warm_starts.push_back(
        detail::product_dephase_ensemble(rho, svd.matrixU(), svd.matrixV().conjugate()));
  }

  detail::ProductEnsemble best;
  double best_value = std::numeric_limits<double>::infinity();
  for (auto& candidate : warm_starts) {
    candidate.pad_to(ensemble_size, dim_a, dim_b, rng);
    double value = detail::er_objective(rho, candidate);
    if (value < best_value) {
      best_value = value;
      best = candidate;
    }
  }

  auto random_ensemble = [&]() {
    detail::ProductEnsemble ensemble;
    ensemble.weights.assign(ensemble_size, 1.0 / static_cast<double>(ensemble_size));
    for (std::size_t i = 0; i < ensemble_size; ++i) {
      ensemble.kets_a.push_back(random_pure_state(dim_a, rng).amplitudes());
      ensemble.kets_b.push_back(random_pure_state(dim_b, rng).amplitudes());
    }
    return ensemble;
  };

  detail::ProductEnsemble current = best;
  double current_value = best_value;

  for (int it = 0; it < budget; ++it) {
    if (best_value <= 1e-12) break;
    if (it > 0 && it % restart_period == 0) {
      if ((it / restart_period) % 2 == 1) {
        current = random_ensemble();
        current_value = detail::er_objective(rho, current);
      } else {
        current = best;
        current_value = best_value;
      }
    }
    double phase = static_cast<double>(it % restart_period) / (restart_period - 1);
    double step = 0.5 * std::pow(2e-3, phase);

    detail::ProductEnsemble proposal = current;
    std::size_t index = rng() % ensemble_size;
    switch (rng() % 3) {
      case 0:
        proposal.weights[index] = std::max(0.0, proposal.weights[index] + 0.3 * step * gaussian(rng));
        proposal.normalize_weights();
        break;
      case 1: {
        ComplexVector& ket = proposal.kets_a[index];
        for (Eigen::Index i = 0; i < ket.size(); ++i) ket(i) += step * complex_gaussian(rng);
        double norm = ket.norm();
        if (norm > 0.0) ket /= norm;
        break;
      }
      default: {
        ComplexVector& ket = proposal.kets_b[index];
        for (Eigen::Index i = 0; i < ket.size(); ++i) ket(i) += step * complex_gaussian(rng);
        double norm = ket.norm();
        if (norm > 0.0) ket /= norm;
        break;
      }
    }
    double value = detail::er_objective(rho, proposal);
    if (value < current_value) {
      current = std::move(proposal);
      current_value = value;
      if (value < best_value) {
        best_value = value;
        best = current;
      }
    }
  }
  return std::max(0.0, best_value);
}

}  // namespace qinfo
