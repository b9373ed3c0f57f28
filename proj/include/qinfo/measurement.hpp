#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qinfo/states.hpp"

namespace qinfo {

// Validation failure listing every violated condition, not just the first.
class validation_error : public std::invalid_argument {
 public:
  validation_error(const std::string& what, std::vector<std::string> violations)
      : std::invalid_argument(join(what, violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::string& what, const std::vector<std::string>& violations) {
    std::string msg = what;
    for (const auto& v : violations) msg += "\n  - " + v;
    return msg;
  }

  std::vector<std::string> violations_;
};

namespace detail {

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

inline void check_operator_set(const std::vector<ComplexMatrix>& ops,
                               std::vector<std::string>& labels, const char* what) {
  if (ops.empty()) throw std::invalid_argument(std::string(what) + ": empty operator set");
  Eigen::Index d = ops.front().rows();
  for (const auto& op : ops) {
    if (op.rows() != op.cols() || op.rows() != d)
      throw std::invalid_argument(std::string(what) +
                                  ": operators must be square and share one dimension");
    if (!is_finite(op))
      throw std::invalid_argument(std::string(what) + ": operator contains NaN or Inf");
  }
  if (labels.empty()) labels = default_labels(ops.size());
  if (labels.size() != ops.size())
    throw std::invalid_argument(std::string(what) + ": label count mismatch");
}

}  // namespace detail

// The three PVM conditions, reported separately so a bad set names everything
// that is wrong with it.
inline std::vector<std::string> pvm_violations(const std::vector<ComplexMatrix>& projectors) {
  std::vector<std::string> violations;
  Eigen::Index d = projectors.front().rows();
  for (std::size_t m = 0; m < projectors.size(); ++m)
    if (!is_hermitian(projectors[m]))
      violations.push_back("hermiticity: projector " + std::to_string(m) +
                           " is not Hermitian");
  for (std::size_t m = 0; m < projectors.size(); ++m)
    for (std::size_t n = m; n < projectors.size(); ++n) {
      ComplexMatrix product = projectors[m] * projectors[n];
      ComplexMatrix expected =
          m == n ? projectors[m] : ComplexMatrix::Zero(d, d).eval();
      if (max_abs(product - expected) > tol::hermiticity)
        violations.push_back("orthogonality: P" + std::to_string(m) + " P" +
                             std::to_string(n) + " != " +
                             (m == n ? "P" + std::to_string(m) : std::string("0")));
    }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& p : projectors) sum += p;
  if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::hermiticity)
    violations.push_back("completeness: projectors do not sum to the identity");
  return violations;
}

class PVMSet {
 public:
  explicit PVMSet(std::vector<ComplexMatrix> projectors, std::vector<std::string> labels = {})
      : projectors_(std::move(projectors)), labels_(std::move(labels)) {
    detail::check_operator_set(projectors_, labels_, "PVMSet");
    auto violations = pvm_violations(projectors_);
    if (!violations.empty()) throw validation_error("PVMSet: invalid PVM", violations);
  }

  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim() const { return static_cast<int>(projectors_.front().rows()); }

 private:
  std::vector<ComplexMatrix> projectors_;
  std::vector<std::string> labels_;
};

inline PVMSet validate_pvm(std::vector<ComplexMatrix> projectors,
                           std::vector<std::string> labels = {}) {
  return PVMSet(std::move(projectors), std::move(labels));
}

// PVM over the columns of a unitary; the computational basis by default.
inline PVMSet basis_pvm(int dim, const std::optional<ComplexMatrix>& basis = {}) {
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(dim);
  if (basis) {
    if (basis->rows() != dim || basis->cols() != dim)
      throw std::invalid_argument("basis_pvm: basis dimension mismatch");
    for (int k = 0; k < dim; ++k)
      projectors.push_back(basis->col(k) * basis->col(k).adjoint());
  } else {
    for (int k = 0; k < dim; ++k) {
      ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
      p(k, k) = 1.0;
      projectors.push_back(std::move(p));
    }
  }
  return PVMSet(std::move(projectors));
}

class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators, std::vector<std::string> labels = {})
      : operators_(std::move(operators)), labels_(std::move(labels)) {
    detail::check_operator_set(operators_, labels_, "KrausSet");
    Eigen::Index d = operators_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& m : operators_) sum += m.adjoint() * m;
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::hermiticity)
      throw validation_error("KrausSet: invalid Kraus set",
                             {"completeness: sum M^dagger M != identity"});
  }

  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim() const { return static_cast<int>(operators_.front().rows()); }

 private:
  std::vector<ComplexMatrix> operators_;
  std::vector<std::string> labels_;
};

inline KrausSet kraus_from_pvm(const PVMSet& pvm) {
  return KrausSet(pvm.projectors(), pvm.labels());
}

class POVMSet {
 public:
  explicit POVMSet(std::vector<ComplexMatrix> effects, std::vector<std::string> labels = {})
      : effects_(std::move(effects)), labels_(std::move(labels)) {
    detail::check_operator_set(effects_, labels_, "POVMSet");
    Eigen::Index d = effects_.front().rows();
    std::vector<std::string> violations;
    for (std::size_t m = 0; m < effects_.size(); ++m) {
      if (!is_hermitian(effects_[m])) {
        violations.push_back("positivity: effect " + std::to_string(m) + " is not Hermitian");
        continue;
      }
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(effects_[m], Eigen::EigenvaluesOnly);
      if (solver.eigenvalues().minCoeff() < -tol::eigenvalue_clip)
        violations.push_back("positivity: effect " + std::to_string(m) +
                             " has a negative eigenvalue");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& f : effects_) sum += f;
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol::hermiticity)
      violations.push_back("completeness: effects do not sum to the identity");
    if (!violations.empty()) throw validation_error("POVMSet: invalid POVM", violations);
  }

  const std::vector<ComplexMatrix>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim() const { return static_cast<int>(effects_.front().rows()); }

 private:
  std::vector<ComplexMatrix> effects_;
  std::vector<std::string> labels_;
};

// Spectral decomposition M = sum_m eps_m P_m with distinct eigenvalues;
// eigenvalues within the degeneracy tolerance share one projector.
inline std::pair<PVMSet, std::vector<double>> observable_to_pvm(const ComplexMatrix& m) {
  HermitianSpectrum spec = hermitian_eig(m);
  std::vector<ComplexMatrix> projectors;
  std::vector<double> eigenvalues;
  Eigen::Index k = 0;
  while (k < spec.eigenvalues.size()) {
    Eigen::Index group_end = k + 1;
    while (group_end < spec.eigenvalues.size() &&
           spec.eigenvalues(k) - spec.eigenvalues(group_end) <= tol::degeneracy)
      ++group_end;
    ComplexMatrix p = ComplexMatrix::Zero(m.rows(), m.cols());
    double eps = 0.0;
    for (Eigen::Index i = k; i < group_end; ++i) {
      p += spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
      eps += spec.eigenvalues(i);
    }
    projectors.push_back(std::move(p));
    eigenvalues.push_back(eps / static_cast<double>(group_end - k));
    k = group_end;
  }
  return {PVMSet(std::move(projectors)), std::move(eigenvalues)};
}

// rho' = sum_m P_m rho P_m. Kills coherence between the PVM subspaces and is
// idempotent (repeatability). Operator sets are accepted with completeness
// error up to the set tolerance, which can exceed the strict state trace
// tolerance; the residue is attributed to the set and divided out.
inline DensityMatrix apply_pvm(const DensityMatrix& rho, const PVMSet& pvm) {
  if (pvm.dim() != rho.dim())
    throw std::invalid_argument("apply_pvm: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& p : pvm.projectors()) out += p * rho.matrix() * p;
  return DensityMatrix(out / out.trace().real());
}

struct MeasurementOutcome {
  std::string label;
  double probability = 0.0;
  // absent when the probability is below the outcome threshold
  std::optional<DensityMatrix> post_state;
};

struct GeneralMeasurementResult {
  std::vector<MeasurementOutcome> outcomes;
  DensityMatrix average;  // sum_m M_m rho M_m^dagger
};

inline GeneralMeasurementResult measure_general(const DensityMatrix& rho,
                                                const KrausSet& kraus) {
  if (kraus.dim() != rho.dim())
    throw std::invalid_argument("measure_general: dimension mismatch");
  std::vector<MeasurementOutcome> outcomes;
  ComplexMatrix average = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (std::size_t m = 0; m < kraus.operators().size(); ++m) {
    ComplexMatrix updated = kraus.operators()[m] * rho.matrix() * kraus.operators()[m].adjoint();
    double p = updated.trace().real();
    average += updated;
    MeasurementOutcome outcome;
    outcome.label = kraus.labels()[m];
    outcome.probability = p;
    if (p >= tol::outcome_probability)
      outcome.post_state = DensityMatrix(updated / p);
    outcomes.push_back(std::move(outcome));
  }
  // as in apply_pvm, completeness rounding in the set is divided out
  return {std::move(outcomes), DensityMatrix(average / average.trace().real())};
}

// F_m = M_m^dagger M_m
inline POVMSet povm_from_kraus(const KrausSet& kraus) {
  std::vector<ComplexMatrix> effects;
  effects.reserve(kraus.operators().size());
  for (const auto& m : kraus.operators()) effects.push_back(m.adjoint() * m);
  return POVMSet(std::move(effects), kraus.labels());
}

// Principal square root M_m = sqrt(F_m); one representative of the unitarily
// equivalent decompositions F_m = M_m^dagger M_m.
inline KrausSet kraus_from_povm(const POVMSet& povm) {
  std::vector<ComplexMatrix> operators;
  operators.reserve(povm.effects().size());
  for (const auto& f : povm.effects()) operators.push_back(matrix_sqrt(f));
  return KrausSet(std::move(operators), povm.labels());
}

inline std::vector<double> povm_probabilities(const DensityMatrix& rho, const POVMSet& povm) {
  if (povm.dim() != rho.dim())
    throw std::invalid_argument("povm_probabilities: dimension mismatch");
  std::vector<double> probabilities;
  probabilities.reserve(povm.effects().size());
  for (const auto& f : povm.effects())
    probabilities.push_back((rho.matrix() * f).trace().real());
  return probabilities;
}

}  // namespace qinfo
