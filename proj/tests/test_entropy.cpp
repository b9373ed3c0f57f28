#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qinfo/entropy.hpp"
#include "qinfo/measurement.hpp"
#include "qinfo/random.hpp"

using namespace qinfo;
using Catch::Matchers::WithinAbs;

TEST_CASE("shannon_entropy", "[entropy]") {
  SECTION("rare-event distribution") {
    REQUIRE_THAT(shannon_entropy(ProbabilityDistribution({0.01, 0.99})),
                 WithinAbs(0.056, 5e-4));
  }
  SECTION("balanced coin") {
    REQUIRE_THAT(shannon_entropy(ProbabilityDistribution({0.5, 0.5})),
                 WithinAbs(std::log(2.0), 1e-12));
    REQUIRE_THAT(shannon_entropy(ProbabilityDistribution({0.5, 0.5})),
                 WithinAbs(0.69, 5e-3));
  }
  SECTION("certain event") {
    REQUIRE_THAT(shannon_entropy(ProbabilityDistribution({1.0})), WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(shannon_entropy(ProbabilityDistribution({0.0, 1.0, 0.0})),
                 WithinAbs(0.0, 1e-14));
  }
  SECTION("invalid distributions") {
    REQUIRE_THROWS_AS(ProbabilityDistribution({0.5, 0.6}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProbabilityDistribution({1.5, -0.5}), std::invalid_argument);
  }
  SECTION("additive over independent joints") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> p(3), q(4);
      double ps = 0, qs = 0;
      for (double& x : p) ps += x = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-3;
      for (double& x : q) qs += x = static_cast<double>(rng() >> 11) * 0x1.0p-53 + 1e-3;
      for (double& x : p) x /= ps;
      for (double& x : q) x /= qs;
      std::vector<double> joint;
      for (double a : p)
        for (double b : q) joint.push_back(a * b);
      double sum = shannon_entropy(ProbabilityDistribution(p)) +
                   shannon_entropy(ProbabilityDistribution(q));
      REQUIRE_THAT(shannon_entropy(ProbabilityDistribution(joint)), WithinAbs(sum, 1e-10));
    }
  }
  SECTION("uniform maximizes the entropy") {
    Rng rng(32);
    const int n = 5;
    double uniform = shannon_entropy(ProbabilityDistribution(std::vector<double>(n, 1.0 / n)));
    REQUIRE_THAT(uniform, WithinAbs(std::log(static_cast<double>(n)), 1e-12));
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<double> p(n);
      double sum = 0;
      for (double& x : p) sum += x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      for (double& x : p) x /= sum;
      REQUIRE(shannon_entropy(ProbabilityDistribution(p)) <= uniform + 1e-12);
    }
  }
}

TEST_CASE("surprisal", "[entropy]") {
  REQUIRE_THAT(surprisal(0.99), WithinAbs(0.010, 5e-4));
  REQUIRE_THAT(surprisal(0.01), WithinAbs(4.605, 5e-4));
  REQUIRE_THAT(surprisal(1.0), WithinAbs(0.0, 1e-14));
  REQUIRE_THROWS_AS(surprisal(0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(surprisal(-0.2), std::invalid_argument);
  REQUIRE_THROWS_AS(surprisal(1.2), std::invalid_argument);
}

TEST_CASE("von_neumann_entropy", "[entropy]") {
  SECTION("pure states carry no entropy") {
    Rng rng(33);
    REQUIRE_THAT(von_neumann_entropy(from_pure(random_pure_state(5, rng))),
                 WithinAbs(0.0, 1e-10));
  }
  SECTION("maximally mixed qubit") {
    REQUIRE_THAT(von_neumann_entropy(helpers::maximally_mixed(2)),
                 WithinAbs(std::log(2.0), 1e-12));
  }
  SECTION("basis dephasing leaves the Shannon entropy of the diagonal") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
      DensityMatrix rho = random_density_matrix(4, 4, rng);
      DensityMatrix dephased = apply_pvm(rho, basis_pvm(4));
      std::vector<double> diag;
      for (int k = 0; k < 4; ++k) diag.push_back(rho.matrix()(k, k).real());
      REQUIRE_THAT(von_neumann_entropy(dephased), WithinAbs(oracles::shannon(diag), 1e-10));
    }
  }
  SECTION("unitarily invariant") {
    Rng rng(35);
    for (int trial = 0; trial < 30; ++trial) {
      DensityMatrix rho = random_density_matrix(4, 2, rng);
      ComplexMatrix u = random_unitary(4, rng);
      DensityMatrix rotated(u * rho.matrix() * u.adjoint());
      REQUIRE_THAT(von_neumann_entropy(rotated), WithinAbs(von_neumann_entropy(rho), 1e-9));
    }
  }
  SECTION("never decreases under a PVM") {
    Rng rng(36);
    for (int trial = 0; trial < 200; ++trial) {
      DensityMatrix rho = random_density_matrix(4, 1 + static_cast<int>(rng() % 4), rng);
      PVMSet pvm = basis_pvm(4, random_unitary(4, rng));
      DensityMatrix after = apply_pvm(rho, pvm);
      REQUIRE(von_neumann_entropy(after) >= von_neumann_entropy(rho) - 1e-9);
      if (max_abs(after.matrix() - rho.matrix()) < 1e-10)
        REQUIRE_THAT(von_neumann_entropy(after), WithinAbs(von_neumann_entropy(rho), 1e-8));
    }
  }
}

TEST_CASE("relative_entropy", "[entropy]") {
  SECTION("vanishes on identical states") {
    Rng rng(37);
    DensityMatrix rho = random_density_matrix(3, 3, rng);
    REQUIRE_THAT(relative_entropy(rho, rho), WithinAbs(0.0, 1e-10));
  }
  SECTION("pure state against the maximally mixed state") {
    REQUIRE_THAT(relative_entropy(from_pure(helpers::ket({1, 0})), helpers::maximally_mixed(2)),
                 WithinAbs(std::log(2.0), 1e-12));
  }
  SECTION("disjoint supports diverge") {
    double value = relative_entropy(from_pure(helpers::ket({1, 0})),
                                    from_pure(helpers::ket({0, 1})));
    REQUIRE(std::isinf(value));
  }
  SECTION("nonnegative on full-support pairs") {
    Rng rng(38);
    for (int trial = 0; trial < 100; ++trial) {
      DensityMatrix rho = random_density_matrix(3, 1 + static_cast<int>(rng() % 3), rng);
      DensityMatrix sigma = random_density_matrix(3, 3, rng);
      double value = relative_entropy(rho, sigma);
      REQUIRE(std::isfinite(value));
      REQUIRE(value >= 0.0);
    }
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(relative_entropy(helpers::maximally_mixed(2), helpers::maximally_mixed(4)),
                      std::invalid_argument);
  }
}
