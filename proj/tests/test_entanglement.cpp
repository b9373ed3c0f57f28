#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qinfo/entanglement.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/random.hpp"

using namespace qinfo;
using Catch::Matchers::WithinAbs;

namespace {

// |Psi_1> = 1/2 (|00> + |10> - |01> - |11>), a product state in disguise.
PureState psi1() { return helpers::ket({1, -1, 1, -1}); }

PureState x_weighted(double x) {
  double y = std::sqrt(1.0 - x * x);
  return helpers::ket({x, 0, 0, y});
}

DensityMatrix random_two_qubit_state(Rng& rng) {
  return random_density_matrix(4, 1 + static_cast<int>(rng() % 4), rng).with_split(2, 2);
}

// Product channel {A_i (x) B_j} built from two local Kraus sets.
std::vector<ComplexMatrix> random_local_kraus(Rng& rng) {
  std::vector<ComplexMatrix> blocks{ginibre_matrix(2, 2, rng), ginibre_matrix(2, 2, rng)};
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& b : blocks) sum += b.adjoint() * b;
  HermitianSpectrum spec = hermitian_eig(sum);
  ComplexMatrix inv_root = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k)
    inv_root += (1.0 / std::sqrt(spec.eigenvalues(k))) *
                (spec.eigenvectors.col(k) * spec.eigenvectors.col(k).adjoint());
  for (auto& b : blocks) b = b * inv_root;
  return blocks;
}

DensityMatrix apply_product_channel(const DensityMatrix& rho,
                                    const std::vector<ComplexMatrix>& kraus_a,
                                    const std::vector<ComplexMatrix>& kraus_b) {
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const auto& a : kraus_a)
    for (const auto& b : kraus_b) {
      ComplexMatrix k = tensor_product(a, b);
      out += k * rho.matrix() * k.adjoint();
    }
  return DensityMatrix(std::move(out), 2, 2);
}

}  // namespace

TEST_CASE("schmidt_decompose", "[entanglement]") {
  SECTION("product state has Schmidt number 1") {
    SchmidtDecomposition schmidt = schmidt_decompose(psi1(), 2, 2);
    REQUIRE_THAT(schmidt.coefficients(0), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(schmidt.coefficients(1), WithinAbs(0.0, 1e-12));
    REQUIRE(schmidt_number(psi1(), 2, 2) == 1);
  }
  SECTION("Bell state splits evenly") {
    SchmidtDecomposition schmidt = schmidt_decompose(helpers::bell_phi_plus(), 2, 2);
    REQUIRE_THAT(schmidt.coefficients(0), WithinAbs(1.0 / std::sqrt(2.0), 1e-12));
    REQUIRE_THAT(schmidt.coefficients(1), WithinAbs(1.0 / std::sqrt(2.0), 1e-12));
    REQUIRE(schmidt_number(helpers::bell_phi_plus(), 2, 2) == 2);
  }
  SECTION("x|00> + y|11> sorts its weights") {
    SchmidtDecomposition schmidt = schmidt_decompose(x_weighted(0.5), 2, 2);
    REQUIRE_THAT(schmidt.coefficients(0), WithinAbs(std::sqrt(0.75), 1e-12));
    REQUIRE_THAT(schmidt.coefficients(1), WithinAbs(0.5, 1e-12));
  }
  SECTION("reconstruction, orthonormal bases, reduced spectra") {
    Rng rng(51);
    for (auto [da, db] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 4}}) {
      PureState psi = random_pure_state(da * db, rng);
      SchmidtDecomposition schmidt = schmidt_decompose(psi, da, db);
      REQUIRE(schmidt.coefficients.size() == std::min(da, db));

      double sum = 0.0;
      for (Eigen::Index n = 0; n < schmidt.coefficients.size(); ++n) {
        REQUIRE(schmidt.coefficients(n) >= 0.0);
        sum += schmidt.coefficients(n) * schmidt.coefficients(n);
      }
      REQUIRE_THAT(sum, WithinAbs(1.0, 1e-10));

      REQUIRE(max_abs(schmidt.reconstruct() - psi.amplitudes()) < 1e-9);
      REQUIRE(max_abs(schmidt.basis_a.adjoint() * schmidt.basis_a -
                      ComplexMatrix::Identity(schmidt.coefficients.size(),
                                              schmidt.coefficients.size())) < 1e-10);
      REQUIRE(max_abs(schmidt.basis_b.adjoint() * schmidt.basis_b -
                      ComplexMatrix::Identity(schmidt.coefficients.size(),
                                              schmidt.coefficients.size())) < 1e-10);

      // squared coefficients are the reduced-state eigenvalues, from either side
      DensityMatrix joint = from_pure(psi).with_split(da, db);
      RealVector eig_a = spectrum(joint.reduced(Subsystem::A)).eigenvalues;
      RealVector eig_b = spectrum(joint.reduced(Subsystem::B)).eigenvalues;
      for (Eigen::Index n = 0; n < schmidt.coefficients.size(); ++n) {
        double lambda = schmidt.coefficients(n) * schmidt.coefficients(n);
        REQUIRE_THAT(eig_a(n), WithinAbs(lambda, 1e-9));
        REQUIRE_THAT(eig_b(n), WithinAbs(lambda, 1e-9));
      }
    }
  }
  SECTION("deterministic output") {
    Rng rng(52);
    PureState psi = random_pure_state(4, rng);
    SchmidtDecomposition first = schmidt_decompose(psi, 2, 2);
    SchmidtDecomposition second = schmidt_decompose(psi, 2, 2);
    REQUIRE(max_abs(first.basis_a - second.basis_a) == 0.0);
    REQUIRE(max_abs(first.basis_b - second.basis_b) == 0.0);
  }
  SECTION("dimension factorization error") {
    REQUIRE_THROWS_AS(schmidt_decompose(helpers::bell_phi_plus(), 2, 3),
                      std::invalid_argument);
  }
  SECTION("three-fold superposition on 3x3") {
    ComplexVector v = ComplexVector::Zero(9);
    v(0) = v(4) = v(8) = 1.0;
    REQUIRE(schmidt_number(normalized(v), 3, 3) == 3);
  }
}

TEST_CASE("entanglement_entropy", "[entanglement]") {
  REQUIRE_THAT(entanglement_entropy(x_weighted(0.5), 2, 2), WithinAbs(0.562, 5e-4));
  REQUIRE_THAT(entanglement_entropy(x_weighted(1.0 / std::sqrt(2.0)), 2, 2),
               WithinAbs(std::log(2.0), 1e-9));
  REQUIRE_THAT(entanglement_entropy(psi1(), 2, 2), WithinAbs(0.0, 1e-10));
  SECTION("maximum is log of the smaller dimension") {
    ComplexVector v = ComplexVector::Zero(6);
    v(0) = v(4) = 1.0;  // (|00> + |11>)/sqrt(2) in 2x3
    REQUIRE_THAT(entanglement_entropy(normalized(v), 2, 3),
                 WithinAbs(std::log(2.0), 1e-10));
  }
}

TEST_CASE("concurrence", "[entanglement]") {
  SECTION("product pure states carry none") {
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
      DensityMatrix rho = from_pure(random_product_pure(2, 2, rng)).with_split(2, 2);
      REQUIRE_THAT(concurrence(rho), WithinAbs(0.0, 1e-7));
    }
  }
  SECTION("Bell state saturates at 1") {
    // reference spectrum of R is {1, 0, 0, 0}
    auto lambdas = oracles::concurrence_spectrum(helpers::rho2().matrix());
    REQUIRE_THAT(lambdas[0], WithinAbs(1.0, 1e-8));
    REQUIRE_THAT(lambdas[1] + lambdas[2] + lambdas[3], WithinAbs(0.0, 1e-7));
    REQUIRE_THAT(concurrence(helpers::rho2()), WithinAbs(1.0, 1e-10));
  }
  SECTION("Werner sweep against the brute-force oracle") {
    for (double p : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
      DensityMatrix rho = helpers::werner(p);
      double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
      REQUIRE_THAT(concurrence(rho), WithinAbs(expected, 1e-8));
      REQUIRE_THAT(concurrence(rho), WithinAbs(oracles::concurrence(rho.matrix()), 1e-8));
    }
  }
  SECTION("dimension error") {
    REQUIRE_THROWS_AS(concurrence(helpers::maximally_mixed(2)), std::invalid_argument);
  }
}

TEST_CASE("entanglement_of_formation_2q", "[entanglement]") {
  SECTION("separable and maximally entangled endpoints") {
    REQUIRE_THAT(entanglement_of_formation_2q(helpers::rho1()), WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(entanglement_of_formation_2q(helpers::rho2()),
                 WithinAbs(std::log(2.0), 1e-10));
  }
  SECTION("agrees with the entanglement entropy on pure states") {
    Rng rng(54);
    for (int trial = 0; trial < 50; ++trial) {
      PureState psi = random_pure_state(4, rng);
      DensityMatrix rho = from_pure(psi).with_split(2, 2);
      REQUIRE_THAT(entanglement_of_formation_2q(rho),
                   WithinAbs(entanglement_entropy(psi, 2, 2), 1e-8));
    }
  }
}

TEST_CASE("negativity and PPT", "[entanglement]") {
  SECTION("product states are PPT with zero negativity") {
    Rng rng(55);
    ComplexMatrix product = tensor_product(random_density_matrix(2, 2, rng).matrix(),
                                           random_density_matrix(2, 2, rng).matrix());
    DensityMatrix rho(product, 2, 2);
    REQUIRE_THAT(negativity(rho), WithinAbs(0.0, 1e-10));
    REQUIRE(is_ppt(rho));
  }
  SECTION("Bell state") {
    REQUIRE_THAT(negativity(helpers::rho2()), WithinAbs(0.5, 1e-10));
    REQUIRE_FALSE(is_ppt(helpers::rho2()));
  }
  SECTION("classically correlated mixture") {
    REQUIRE_THAT(negativity(helpers::rho1()), WithinAbs(0.0, 1e-10));
    REQUIRE(is_ppt(helpers::rho1()));
  }
  SECTION("Werner sweep against the brute-force oracle") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.4, 0.6, 0.8, 1.0}) {
      DensityMatrix rho = helpers::werner(p);
      double expected = std::max(0.0, (3.0 * p - 1.0) / 4.0);
      REQUIRE_THAT(negativity(rho), WithinAbs(expected, 1e-8));
      REQUIRE_THAT(negativity(rho),
                   WithinAbs(std::max(0.0, oracles::negativity(rho.matrix(), 2, 2)), 1e-8));
    }
    REQUIRE(is_ppt(helpers::werner(1.0 / 3.0)));
    REQUIRE_FALSE(is_ppt(helpers::werner(0.4)));
  }
  SECTION("negativity > 0 exactly when the partial transpose fails") {
    Rng rng(56);
    for (int trial = 0; trial < 100; ++trial) {
      DensityMatrix rho = random_two_qubit_state(rng);
      REQUIRE((negativity(rho) > 1e-9) == !is_ppt(rho));
    }
  }
  SECTION("split is required") {
    DensityMatrix no_split = helpers::maximally_mixed(4);
    REQUIRE_THROWS_WITH(negativity(no_split), Catch::Matchers::ContainsSubstring("split"));
  }
}

TEST_CASE("entanglement measure axioms", "[entanglement]") {
  Rng rng(57);

  SECTION("zero on separable states") {
    for (int trial = 0; trial < 200; ++trial) {
      DensityMatrix rho = random_separable(2, 2, 1 + static_cast<int>(rng() % 4), rng);
      REQUIRE(concurrence(rho) < 1e-6);
      REQUIRE(negativity(rho) < 1e-6);
      REQUIRE(entanglement_of_formation_2q(rho) < 1e-6);
    }
  }
  SECTION("invariant under local unitaries") {
    for (int trial = 0; trial < 50; ++trial) {
      DensityMatrix rho = random_two_qubit_state(rng);
      ComplexMatrix local = tensor_product(random_unitary(2, rng), random_unitary(2, rng));
      DensityMatrix rotated(local * rho.matrix() * local.adjoint(), 2, 2);
      REQUIRE_THAT(concurrence(rotated), WithinAbs(concurrence(rho), 1e-8));
      REQUIRE_THAT(negativity(rotated), WithinAbs(negativity(rho), 1e-8));
      REQUIRE_THAT(entanglement_of_formation_2q(rotated),
                   WithinAbs(entanglement_of_formation_2q(rho), 1e-8));
    }
  }
  SECTION("local product channels cannot increase entanglement") {
    for (int trial = 0; trial < 50; ++trial) {
      DensityMatrix rho = random_two_qubit_state(rng);
      DensityMatrix after =
          apply_product_channel(rho, random_local_kraus(rng), random_local_kraus(rng));
      REQUIRE(concurrence(after) <= concurrence(rho) + 1e-8);
      REQUIRE(negativity(after) <= negativity(rho) + 1e-8);
    }
  }
}

TEST_CASE("relative entropy of entanglement upper bound", "[entanglement][er]") {
  SECTION("separable inputs sit at zero") {
    REQUIRE(relative_entropy_of_entanglement_ub(helpers::rho1(), 200, 1) <= 1e-3);
    Rng rng(58);
    ComplexMatrix product = tensor_product(random_density_matrix(2, 2, rng).matrix(),
                                           random_density_matrix(2, 2, rng).matrix());
    REQUIRE(relative_entropy_of_entanglement_ub(DensityMatrix(product, 2, 2), 200, 1) <= 1e-3);
  }
  SECTION("Bell state reaches ln 2") {
    double value = relative_entropy_of_entanglement_ub(helpers::rho2(), 4000, 1);
    REQUIRE_THAT(value, WithinAbs(std::log(2.0), 1e-2));
    REQUIRE(value >= std::log(2.0) - 1e-9);  // it is an upper bound
  }
  SECTION("pure states approach their entanglement entropy") {
    Rng rng(59);
    PureState psi = random_pure_state(4, rng);
    DensityMatrix rho = from_pure(psi).with_split(2, 2);
    double bound = relative_entropy_of_entanglement_ub(rho, 2000, 7);
    double exact = entanglement_entropy(psi, 2, 2);
    REQUIRE(bound >= exact - 1e-9);
    REQUIRE(bound <= exact + 0.05);
  }
  SECTION("monotone in the budget and deterministic in the seed") {
    Rng rng(60);
    DensityMatrix rho = helpers::werner(0.8);
    double coarse = relative_entropy_of_entanglement_ub(rho, 10, 42);
    double fine = relative_entropy_of_entanglement_ub(rho, 1000, 42);
    REQUIRE(fine <= coarse + 1e-12);
    REQUIRE(relative_entropy_of_entanglement_ub(rho, 1000, 42) == fine);
  }
  SECTION("dimension limit") {
    Rng rng(61);
    DensityMatrix big = random_density_matrix(10, 2, rng).with_split(5, 2);
    REQUIRE_THROWS_AS(relative_entropy_of_entanglement_ub(big, 10, 1), std::invalid_argument);
  }
}
