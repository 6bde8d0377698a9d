#include <array>
#include <cmath>
#include <vector>

#include "affdiscord/states.hpp"
#include "support.hpp"

using namespace affdiscord;
using testing::distance;

TEST_CASE("validation accepts the maximally mixed state") {
  const auto state = BipartiteState::validate(identity(4) / 4.0, 2, 2);
  CHECK(state.purity() == doctest::Approx(0.25));
  CHECK(distance(state.marginal(Subsystem::A), identity(2) / 2.0) < 1e-15);
}

TEST_CASE("validation failure kinds") {
  CHECK_FAILS_WITH(BipartiteState::validate(identity(4) / 2.0, 2, 2), ErrorKind::NotUnitTrace);
  // Traceless and indefinite: positivity is checked before the trace.
  CHECK_FAILS_WITH(BipartiteState::validate(kron(pauli::z(), identity(2)), 2, 2),
                   ErrorKind::NotPSD);
  ComplexMatrix skew = identity(4) / 4.0;
  skew(0, 1) = 0.1;
  CHECK_FAILS_WITH(BipartiteState::validate(skew, 2, 2), ErrorKind::NonHermitian);
  CHECK_FAILS_WITH(BipartiteState::validate(identity(4) / 4.0, 2, 3), ErrorKind::DimensionMismatch);
  CHECK_FAILS_WITH(BipartiteState::validate(ComplexMatrix::Zero(4, 3), 2, 2),
                   ErrorKind::DimensionMismatch);
}

TEST_CASE("validation respects injected tolerances") {
  ComplexMatrix rho = identity(4) / 4.0;
  rho(0, 0) += 1e-7;
  CHECK_FAILS_WITH(BipartiteState::validate(rho, 2, 2), ErrorKind::NotUnitTrace);
  Tolerances loose;
  loose.trace = 1e-6;
  const auto state = BipartiteState::validate(rho, 2, 2, loose);
  CHECK(std::abs(state.rho().trace() - 1.0) < 1e-15);
}

TEST_CASE("pure states") {
  ComplexVector amp = ComplexVector::Zero(4);
  amp[0] = 1.0;
  amp[3] = 1.0;
  CHECK_FAILS_WITH(PureState(2, 2, amp), ErrorKind::NotNormalized);
  const PureState bell = PureState::normalized(2, 2, amp);
  CHECK(bell.density().purity() == doctest::Approx(1.0));
  const auto schmidt = schmidt_spectrum(bell);
  REQUIRE(schmidt.coefficients.size() == 2);
  CHECK(schmidt.coefficients[0] == doctest::Approx(0.5));
  CHECK(schmidt.coefficients[1] == doctest::Approx(0.5));

  ComplexVector skewed = ComplexVector::Zero(4);
  skewed[0] = std::sqrt(3.0) / 2.0;
  skewed[3] = 0.5;
  const auto s2 = schmidt_spectrum(PureState(2, 2, skewed));
  CHECK(s2.coefficients[0] == doctest::Approx(0.75));
  CHECK(s2.coefficients[1] == doctest::Approx(0.25));

  ComplexVector product = ComplexVector::Zero(6);
  product[0] = 1.0;
  const auto s3 = schmidt_spectrum(PureState(2, 3, product));
  CHECK(s3.coefficients[0] == doctest::Approx(1.0));
  CHECK(s3.coefficients[1] == doctest::Approx(0.0));
}

TEST_CASE("schmidt spectrum is invariant under local unitaries") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState psi = random_pure_state(2, 3, rng);
    const ComplexMatrix u = random_unitary(2, rng), v = random_unitary(3, rng);
    const PureState rotated(2, 3, kron(u, v) * psi.amplitudes());
    const auto a = schmidt_spectrum(psi).coefficients;
    const auto b = schmidt_spectrum(rotated).coefficients;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i] - b[i]) < 1e-12);
      sum += a[i];
    }
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("bell vectors are orthonormal and diagonalize the Pauli correlations") {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const double overlap = std::abs(bell_vector(a, b).dot(bell_vector(c, d)));
          CHECK(overlap == doctest::Approx((a == c && b == d) ? 1.0 : 0.0));
        }
  // <beta_11| sigma_j (x) sigma_j |beta_11> = -1: the singlet.
  const ComplexVector singlet = bell_vector(1, 1);
  for (const ComplexMatrix& s : {pauli::x(), pauli::y(), pauli::z()}) {
    CHECK(std::real(singlet.dot(kron(s, s) * singlet)) == doctest::Approx(-1.0));
  }
}

TEST_CASE("bell-diagonal eigenvalues") {
  auto lam = bell_diagonal_eigenvalues(-1, -1, -1);
  CHECK(lam[0] == doctest::Approx(0.0));
  CHECK(lam[1] == doctest::Approx(0.0));
  CHECK(lam[2] == doctest::Approx(0.0));
  CHECK(lam[3] == doctest::Approx(1.0));

  lam = bell_diagonal_eigenvalues(1, 1, 1);
  CHECK(lam[0] == doctest::Approx(0.5));
  CHECK(lam[3] == doctest::Approx(-0.5));
  CHECK_FAILS_WITH(bell_diagonal(1, 1, 1), ErrorKind::InvalidBlochVector);

  CHECK(distance(bell_diagonal(0, 0, 0).rho(), identity(4) / 4.0) < 1e-15);
}

TEST_CASE("bell-diagonal state matches its spectral decomposition") {
  const double c[3] = {0.3, -0.2, 0.5};
  const auto lam = bell_diagonal_eigenvalues(c[0], c[1], c[2]);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  int i = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b, ++i) {
      const ComplexVector v = bell_vector(a, b);
      expected += lam[i] * v * v.adjoint();
    }
  CHECK(distance(bell_diagonal(c[0], c[1], c[2]).rho(), expected) < 1e-14);
}

TEST_CASE("two-qubit werner states") {
  const auto w0 = werner_two_qubit(0.0);
  CHECK(distance(w0.rho(), identity(4) / 4.0) < 1e-15);
  CHECK(werner_two_qubit(1.0).purity() == doctest::Approx(1.0));

  const RealVector spec = werner_two_qubit(0.5).spectrum();
  CHECK(spec[0] == doctest::Approx(0.125));
  CHECK(spec[2] == doctest::Approx(0.125));
  CHECK(spec[3] == doctest::Approx(0.625));

  for (double p : {-1.0 / 3.0, 0.0, 0.4, 1.0}) {
    CHECK(distance(werner_two_qubit(p).rho(), bell_diagonal(-p, -p, -p).rho()) < 1e-14);
  }
}

TEST_CASE("general werner states") {
  for (std::size_t m : {2u, 3u, 4u}) {
    const ComplexMatrix f = swap_operator(m);
    CHECK(distance(f * f, identity(m * m)) < 1e-15);
    for (double x : {-1.0, -0.4, 0.0, 0.35, 1.0}) {
      const auto w = werner_general(m, x);
      CHECK(std::real((w.rho() * f).trace()) == doctest::Approx(x));
      // U (x) U invariance.
      Rng rng(m * 100 + 7);
      const ComplexMatrix u = random_unitary(m, rng);
      CHECK(distance(apply_local_unitaries(w, u, u).rho(), w.rho()) < 1e-13);
    }
  }
  CHECK_FAILS_WITH(werner_general(3, 1.5), ErrorKind::OutOfRange);
}

TEST_CASE("isotropic states") {
  for (std::size_t m : {2u, 3u, 5u}) {
    const double md = static_cast<double>(m);
    CHECK(distance(isotropic(m, 1.0 / (md * md)).rho(), identity(m * m) / (md * md)) < 1e-14);
    const ComplexVector psi = maximally_entangled_vector(m);
    CHECK(distance(isotropic(m, 1.0).rho(), psi * psi.adjoint()) < 1e-14);
    for (double x : {0.0, 0.3, 0.8}) {
      CHECK(std::real(psi.dot(isotropic(m, x).rho() * psi)) == doctest::Approx(x));
    }
  }
  const RealVector spec = isotropic(2, 0.0).spectrum();
  CHECK(spec[0] == doctest::Approx(0.0));
  CHECK(spec[1] == doctest::Approx(1.0 / 3.0));
  CHECK(spec[3] == doctest::Approx(1.0 / 3.0));
  CHECK_FAILS_WITH(isotropic(3, -0.1), ErrorKind::OutOfRange);
}

TEST_CASE("classical-quantum and product states") {
  const std::vector<double> probs{0.25, 0.75};
  const std::vector<ComplexMatrix> sigmas{identity(2) / 2.0, (identity(2) + pauli::x()) / 2.0};
  const auto cq = classical_quantum(probs, sigmas);
  CHECK(std::real(cq.rho()(0, 0)) == doctest::Approx(0.125));
  CHECK(std::abs(cq.rho()(2, 3)) == doctest::Approx(0.375));

  const std::vector<double> bad{0.5, 0.6};
  CHECK_FAILS_WITH(classical_quantum(bad, sigmas), ErrorKind::InvalidProbabilities);

  const auto prod = product_state(identity(2) / 2.0, identity(3) / 3.0);
  CHECK(prod.dim() == 6);
  CHECK(distance(prod.rho(), identity(6) / 6.0) < 1e-15);
}

TEST_CASE("ancilla appending multiplies purity") {
  Rng rng(4);
  const auto state = random_state(2, 2, 3, rng);
  const ComplexMatrix mixed = identity(2) / 2.0;
  const auto with_mixed = append_ancilla(state, mixed);
  CHECK(with_mixed.dim_a() == 2);
  CHECK(with_mixed.dim_b() == 4);
  CHECK(with_mixed.purity() == doctest::Approx(state.purity() / 2.0));

  ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(append_ancilla(state, pure).purity() == doctest::Approx(state.purity()));

  const ComplexMatrix sigma = random_density(3, 2, rng);
  const double ps = std::real((sigma * sigma).trace());
  CHECK(append_ancilla(state, sigma).purity() == doctest::Approx(state.purity() * ps));
  // Appending to B leaves the A marginal untouched.
  CHECK(distance(append_ancilla(state, sigma).marginal(Subsystem::A),
                 state.marginal(Subsystem::A)) < 1e-14);
}

TEST_CASE("random states") {
  CHECK(random_state(2, 3, 1, 9).purity() == doctest::Approx(1.0));
  CHECK(distance(random_state(3, 3, 4, 9).rho(), random_state(3, 3, 4, 9).rho()) == 0.0);
  CHECK(distance(random_state(3, 3, 4, 9).rho(), random_state(3, 3, 4, 10).rho()) > 1e-3);
  CHECK_FAILS_WITH(random_state(2, 2, 0, 1), ErrorKind::OutOfRange);
  CHECK_FAILS_WITH(random_state(2, 2, 5, 1), ErrorKind::OutOfRange);

  const RealVector spec = random_state(3, 3, 4, 12).spectrum();
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(std::abs(spec[i]) < 1e-12);

  // Ensemble average of full-rank states is the maximally mixed state.
  Rng rng(31);
  ComplexMatrix mean = ComplexMatrix::Zero(4, 4);
  const int samples = 2000;
  for (int i = 0; i < samples; ++i) mean += random_state(2, 2, 4, rng).rho();
  mean /= static_cast<double>(samples);
  CHECK(distance(mean, identity(4) / 4.0) < 0.01);
}

TEST_CASE("haar unitaries") {
  Rng rng(2);
  for (std::size_t dim : {2u, 3u, 8u}) {
    const ComplexMatrix u = random_unitary(dim, rng);
    CHECK(distance(u.adjoint() * u, identity(dim)) < 1e-13);
  }
}
