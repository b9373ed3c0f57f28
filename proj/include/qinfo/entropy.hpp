#pragma once

#include <limits>
#include <vector>

#include "qinfo/states.hpp"

namespace qinfo {

// All entropies are in nats.

class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> probabilities)
      : probabilities_(std::move(probabilities)) {
    if (probabilities_.empty())
      throw std::invalid_argument("ProbabilityDistribution: empty");
    double sum = 0.0;
    for (double p : probabilities_) {
      if (!(p >= 0.0))
        throw std::invalid_argument("ProbabilityDistribution: negative or NaN probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol::probability_sum)
      throw std::invalid_argument("ProbabilityDistribution: probabilities sum to " +
                                  std::to_string(sum));
  }

  const std::vector<double>& probabilities() const { return probabilities_; }

 private:
  std::vector<double> probabilities_;
};

// -sum p ln p with 0 ln 0 := 0 by continuity.
inline double shannon_entropy(const ProbabilityDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probabilities())
    if (p > tol::support_cut) h -= p * std::log(p);
  return h;
}

// -ln p, the information gained from one occurrence of an event of probability p.
inline double surprisal(double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("surprisal: probability must lie in (0, 1]");
  return -std::log(p);
}

// S(rho) = -Tr(rho ln rho), the Shannon entropy of the eigenvalue distribution.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  HermitianSpectrum spec = spectrum(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    double lambda = spec.eigenvalues(k);
    if (lambda > tol::support_cut) s -= lambda * std::log(lambda);
  }
  return s;
}

// Tr(rho ln rho) - Tr(rho ln sigma), computed on the support of sigma.
// Returns +infinity when rho has weight outside that support.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  HermitianSpectrum sig = spectrum(sigma);
  double tr_rho_log_sigma = 0.0;
  for (Eigen::Index k = 0; k < sig.eigenvalues.size(); ++k) {
    double s = sig.eigenvalues(k);
    // weight of rho along this eigendirection of sigma
    double w = (sig.eigenvectors.col(k).adjoint() * rho.matrix() * sig.eigenvectors.col(k))(0)
                   .real();
    if (s < tol::support_overlap) {
      if (w > tol::support_overlap) return std::numeric_limits<double>::infinity();
      continue;
    }
    tr_rho_log_sigma += w * std::log(s);
  }
  double value = -von_neumann_entropy(rho) - tr_rho_log_sigma;
  // Klein's inequality guarantees nonnegativity; small negatives come from
  // eigensolver noise or from directions dropped by the support cut.
  return value < 0.0 && value > -1e-8 ? 0.0 : value;
}

}  // namespace qinfo
