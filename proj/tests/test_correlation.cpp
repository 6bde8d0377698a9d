#include <cmath>
#include <vector>

#include "affdiscord/correlation.hpp"
#include "affdiscord/measures.hpp"
#include "support.hpp"

using namespace affdiscord;
using testing::distance;

TEST_CASE("gell-mann bases are orthonormal and Hermitian") {
  for (std::size_t d : {2u, 3u, 4u}) {
    const OperatorBasis basis = gell_mann_basis(d);
    REQUIRE(basis.operators.size() == d * d);
    CHECK(distance(basis.operators[0], identity(d) / std::sqrt(static_cast<double>(d))) < 1e-15);
    for (std::size_t i = 0; i < d * d; ++i) {
      CHECK(hermiticity_defect(basis.operators[i]) == 0.0);
      if (i > 0) CHECK(std::abs(basis.operators[i].trace()) < 1e-15);
      for (std::size_t j = 0; j < d * d; ++j) {
        const double gram = std::real((basis.operators[i] * basis.operators[j]).trace());
        CHECK(gram == doctest::Approx(i == j ? 1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("qubit basis is the scaled Pauli set") {
  const OperatorBasis basis = gell_mann_basis(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(distance(basis.operators[1], s * pauli::x()) < 1e-15);
  CHECK(distance(basis.operators[2], s * pauli::y()) < 1e-15);
  CHECK(distance(basis.operators[3], s * pauli::z()) < 1e-15);
}

TEST_CASE("correlation matrix of a Bell state") {
  // For a pure state sqrt(rho) = rho; beta_00 has <sigma_j sigma_j> = (1, -1, 1).
  const ComplexVector v = bell_vector(0, 0);
  const auto state = BipartiteState::validate(v * v.adjoint(), 2, 2);
  const RealMatrix g = correlation_matrix(state).gamma;
  CHECK(g(0, 0) == doctest::Approx(0.5));
  CHECK(g(1, 1) == doctest::Approx(0.5));
  CHECK(g(2, 2) == doctest::Approx(-0.5));
  CHECK(g(3, 3) == doctest::Approx(0.5));
  CHECK(g.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("correlation matrix of the maximally mixed state") {
  // sqrt(1/4) = 1/2 = gamma_00 X_0 (x) Y_0 with X_0 (x) Y_0 = 1/2, so gamma_00 = 1.
  const auto state = BipartiteState::validate(identity(4) / 4.0, 2, 2);
  const RealMatrix g = correlation_matrix(state).gamma;
  CHECK(g(0, 0) == doctest::Approx(1.0));
  CHECK(g.cwiseAbs().sum() == doctest::Approx(1.0));
  CHECK(lower_bound(state) == doctest::Approx(0.0));
}

TEST_CASE("parseval and reconstruction on random states") {
  Rng rng(17);
  const std::pair<std::size_t, std::size_t> dims[] = {{2, 2}, {2, 3}, {3, 3}, {3, 2}, {2, 4}};
  for (auto [da, db] : dims) {
    for (std::size_t rank = 1; rank <= da * db; rank += 2) {
      const auto state = random_state(da, db, rank, rng);
      const auto cm = correlation_matrix(state);
      CHECK(cm.gamma.rows() == static_cast<Eigen::Index>(da * da));
      CHECK(cm.gamma.cols() == static_cast<Eigen::Index>(db * db));
      CHECK(cm.gamma.squaredNorm() == doctest::Approx(1.0).epsilon(1e-10));
      const ComplexMatrix back =
          reconstruct_operator(cm, gell_mann_basis(da), gell_mann_basis(db));
      CHECK(distance(back, matrix_sqrt_psd(state.rho())) < 1e-9);
    }
  }
}

TEST_CASE("product pure states have rank-one correlation matrices") {
  ComplexVector amp = ComplexVector::Zero(6);
  amp[1] = 1.0;
  const auto state = PureState(2, 3, amp).density();
  const RealMatrix g = correlation_matrix(state).gamma;
  Eigen::JacobiSVD<RealMatrix> svd(g);
  CHECK(svd.singularValues()[0] == doctest::Approx(1.0));
  CHECK(svd.singularValues()[1] == doctest::Approx(0.0));
  CHECK(lower_bound(state) == doctest::Approx(0.0));
}

TEST_CASE("partition requires a qubit on A") {
  const auto state = random_state(3, 2, 6, 1);
  CHECK_FAILS_WITH(partition_gamma(correlation_matrix(state)), ErrorKind::WrongDimension);
  CHECK_FAILS_WITH(closed_form_2xn(state), ErrorKind::WrongDimension);
}

TEST_CASE("closed form on reference states") {
  const ComplexVector v = bell_vector(0, 0);
  const auto bell = BipartiteState::validate(v * v.adjoint(), 2, 2);
  CHECK(closed_form_2xn(bell).value == doctest::Approx(0.5));
  CHECK(lower_bound(bell) == doctest::Approx(0.5));

  Rng rng(4);
  const std::vector<double> probs{0.3, 0.7};
  const std::vector<ComplexMatrix> sigmas{identity(3) / 3.0, random_density(3, 2, rng)};
  const auto cq = classical_quantum(probs, sigmas);
  const auto result = closed_form_2xn(cq);
  CHECK(std::abs(result.value) < 1e-12);
  CHECK(result.method == Method::Closed2xN);
  // The optimal direction is the z axis.
  REQUIRE(result.parameters.size() == 3);
  CHECK(std::abs(result.parameters[2]) == doctest::Approx(1.0));
}

TEST_CASE("closed form is attained by its reported measurement") {
  Rng rng(23);
  for (std::size_t db : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto state = random_state(2, db, 1 + trial % (2 * db), rng);
      const auto result = closed_form_2xn(state);
      REQUIRE(result.measurement.has_value());
      CHECK(affinity_discord_at(state, *result.measurement) ==
            doctest::Approx(result.value).epsilon(1e-10));
      CHECK(lower_bound(state) <= result.value + 1e-9);
    }
  }
}

TEST_CASE("closed form is invariant under local unitaries") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto state = random_state(2, 3, 3, rng);
    const auto rotated =
        apply_local_unitaries(state, random_unitary(2, rng), random_unitary(3, rng));
    CHECK(std::abs(closed_form_2xn(state).value - closed_form_2xn(rotated).value) < 1e-10);
    CHECK(std::abs(lower_bound(state) - lower_bound(rotated)) < 1e-10);
  }
}

TEST_CASE("clamped bound is non-negative") {
  const auto state = BipartiteState::validate(identity(9) / 9.0, 3, 3);
  CHECK(lower_bound(state) <= 1e-12);
  CHECK(lower_bound_clamped(state) >= 0.0);
}
