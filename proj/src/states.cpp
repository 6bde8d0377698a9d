#include "affdiscord/states.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "affdiscord/errors.hpp"

namespace affdiscord {

namespace {

constexpr double kRangeSlack = 1e-12;

void require_in_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo - kRangeSlack && value <= hi + kRangeSlack)) {
    fail(ErrorKind::OutOfRange, fmt::format("{} = {} outside [{}, {}]", name, value, lo, hi));
  }
}

// Hermitian + PSD check with clamping of tiny negative eigenvalues. Leaves the
// trace check to the caller.
ComplexMatrix clean_psd(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    fail(ErrorKind::DimensionMismatch, fmt::format("matrix is {}x{}", m.rows(), m.cols()));
  }
  if (!is_hermitian(m, tol.state_hermitian)) {
    fail(ErrorKind::NonHermitian,
         fmt::format("hermiticity defect {:.3e} exceeds {:.1e}", hermiticity_defect(m),
                     tol.state_hermitian));
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const RealVector& lambda = solver.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -tol.psd) {
    fail(ErrorKind::NotPSD, fmt::format("minimum eigenvalue {:.6e} below -{:.1e}",
                                        lambda.minCoeff(), tol.psd));
  }
  if (lambda.size() > 0 && lambda.minCoeff() < 0.0) {
    RealVector clamped = lambda.cwiseMax(0.0);
    h = solver.eigenvectors() * clamped.asDiagonal() * solver.eigenvectors().adjoint();
    h = 0.5 * (h + h.adjoint());
  }
  return h;
}

void require_unit_trace(const ComplexMatrix& m, const Tolerances& tol) {
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    fail(ErrorKind::NotUnitTrace, fmt::format("trace {:.12g} differs from 1", tr));
  }
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

BipartiteState BipartiteState::validate(const ComplexMatrix& rho, std::size_t dim_a,
                                        std::size_t dim_b, const Tolerances& tol) {
  if (dim_a == 0 || dim_b == 0) {
    fail(ErrorKind::DimensionMismatch, "subsystem dimensions must be positive");
  }
  const auto expected = static_cast<Eigen::Index>(dim_a * dim_b);
  if (rho.rows() != expected || rho.cols() != expected) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("matrix is {}x{}, dims ({}, {}) require {}x{}", rho.rows(), rho.cols(), dim_a,
                     dim_b, expected, expected));
  }
  ComplexMatrix cleaned = clean_psd(rho, tol);
  require_unit_trace(cleaned, tol);
  cleaned /= cleaned.trace().real();
  return BipartiteState(std::move(cleaned), dim_a, dim_b);
}

double BipartiteState::purity() const { return (rho_ * rho_).trace().real(); }

ComplexMatrix BipartiteState::marginal(Subsystem keep) const {
  return partial_trace(rho_, dim_a_, dim_b_, keep);
}

RealVector BipartiteState::spectrum() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ComplexMatrix validate_density(const ComplexMatrix& sigma, const Tolerances& tol) {
  ComplexMatrix cleaned = clean_psd(sigma, tol);
  require_unit_trace(cleaned, tol);
  return cleaned / cleaned.trace().real();
}

PureState::PureState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
                     const Tolerances& tol)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
  if (dim_a == 0 || dim_b == 0 ||
      amplitudes_.size() != static_cast<Eigen::Index>(dim_a * dim_b)) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("{} amplitudes for dims ({}, {})", amplitudes_.size(), dim_a, dim_b));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol.normalization) {
    fail(ErrorKind::NotNormalized, fmt::format("amplitude norm {:.15g}", amplitudes_.norm()));
  }
}

PureState PureState::normalized(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes) {
  double norm = amplitudes.norm();
  if (norm == 0.0) fail(ErrorKind::NotNormalized, "zero amplitude vector");
  return PureState(dim_a, dim_b, amplitudes / norm);
}

ComplexMatrix PureState::coefficient_matrix() const {
  const auto m = static_cast<Eigen::Index>(dim_a_);
  const auto n = static_cast<Eigen::Index>(dim_b_);
  ComplexMatrix c(m, n);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < n; ++b) c(a, b) = amplitudes_[a * n + b];
  return c;
}

BipartiteState PureState::density() const {
  return BipartiteState::validate(projector(amplitudes_), dim_a_, dim_b_);
}

SchmidtSpectrum schmidt_spectrum(const PureState& psi) {
  Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficient_matrix());
  const RealVector& sv = svd.singularValues();
  SchmidtSpectrum out;
  out.coefficients.reserve(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) out.coefficients.push_back(sv[i] * sv[i]);
  std::sort(out.coefficients.begin(), out.coefficients.end(), std::greater<>());
  return out;
}

ComplexVector bell_vector(int a, int b) {
  ComplexVector v = ComplexVector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  v[b] += s;                                  // |0,b>
  v[2 + (1 - b)] += (a == 0 ? s : -s);        // (-1)^a |1,1+b>
  return v;
}

ComplexVector maximally_entangled_vector(std::size_t m) {
  const auto d = static_cast<Eigen::Index>(m);
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(m));
  return v;
}

ComplexMatrix swap_operator(std::size_t m) {
  const auto d = static_cast<Eigen::Index>(m);
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) f(k * d + l, l * d + k) = 1.0;
  return f;
}

std::array<double, 4> bell_diagonal_eigenvalues(double c1, double c2, double c3) {
  std::array<double, 4> out{};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sa = a == 0 ? 1.0 : -1.0;
      const double sb = b == 0 ? 1.0 : -1.0;
      out[static_cast<std::size_t>(2 * a + b)] = 0.25 * (1.0 + sa * c1 - sa * sb * c2 + sb * c3);
    }
  }
  return out;
}

BipartiteState bell_diagonal(double c1, double c2, double c3, const Tolerances& tol) {
  const auto lambdas = bell_diagonal_eigenvalues(c1, c2, c3);
  for (double l : lambdas) {
    if (l < -tol.bloch) {
      fail(ErrorKind::InvalidBlochVector,
           fmt::format("c = ({}, {}, {}) gives Bell eigenvalue {}", c1, c2, c3, l));
    }
  }
  ComplexMatrix rho = identity(4);
  rho += c1 * kron(pauli::x(), pauli::x());
  rho += c2 * kron(pauli::y(), pauli::y());
  rho += c3 * kron(pauli::z(), pauli::z());
  return BipartiteState::validate(0.25 * rho, 2, 2, tol);
}

BipartiteState werner_two_qubit(double p) {
  require_in_range(p, -1.0 / 3.0, 1.0, "p");
  // Singlet |beta_11>, the Bell state selected by c = (-p, -p, -p).
  ComplexMatrix rho = (1.0 - p) / 4.0 * identity(4) + p * projector(bell_vector(1, 1));
  return BipartiteState::validate(rho, 2, 2);
}

BipartiteState werner_general(std::size_t m, double x) {
  if (m < 2) fail(ErrorKind::OutOfRange, fmt::format("Werner dimension {} < 2", m));
  require_in_range(x, -1.0, 1.0, "x");
  const double md = static_cast<double>(m);
  const double denom = md * md * md - md;
  ComplexMatrix rho = (md - x) / denom * identity(m * m) + (md * x - 1.0) / denom * swap_operator(m);
  return BipartiteState::validate(rho, m, m);
}

BipartiteState isotropic(std::size_t m, double x) {
  if (m < 2) fail(ErrorKind::OutOfRange, fmt::format("isotropic dimension {} < 2", m));
  require_in_range(x, 0.0, 1.0, "x");
  const double md = static_cast<double>(m);
  const ComplexMatrix p = projector(maximally_entangled_vector(m));
  ComplexMatrix rho = (1.0 - x) / (md * md - 1.0) * (identity(m * m) - p) + x * p;
  return BipartiteState::validate(rho, m, m);
}

BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                             const Tolerances& tol) {
  const ComplexMatrix a = validate_density(rho_a, tol);
  const ComplexMatrix b = validate_density(rho_b, tol);
  return BipartiteState::validate(kron(a, b), static_cast<std::size_t>(a.rows()),
                                  static_cast<std::size_t>(b.rows()), tol);
}

BipartiteState classical_quantum(std::span<const double> probs,
                                 std::span<const ComplexMatrix> states_b, const Tolerances& tol) {
  if (probs.empty() || probs.size() != states_b.size()) {
    fail(ErrorKind::InvalidProbabilities,
         fmt::format("{} probabilities for {} conditional states", probs.size(), states_b.size()));
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) fail(ErrorKind::InvalidProbabilities, fmt::format("negative weight {}", p));
    total += p;
  }
  if (std::abs(total - 1.0) > tol.trace) {
    fail(ErrorKind::InvalidProbabilities, fmt::format("weights sum to {:.12g}", total));
  }
  const std::size_t m = probs.size();
  const auto n = states_b.front().rows();
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(m) * n,
                                          static_cast<Eigen::Index>(m) * n);
  for (std::size_t k = 0; k < m; ++k) {
    if (states_b[k].rows() != n) {
      fail(ErrorKind::DimensionMismatch, "conditional states differ in dimension");
    }
    const auto kk = static_cast<Eigen::Index>(k);
    rho.block(kk * n, kk * n, n, n) = probs[k] * validate_density(states_b[k], tol);
  }
  return BipartiteState::validate(rho, m, static_cast<std::size_t>(n), tol);
}

BipartiteState append_ancilla(const BipartiteState& state, const ComplexMatrix& sigma,
                              const Tolerances& tol) {
  const ComplexMatrix s = validate_density(sigma, tol);
  return BipartiteState::validate(kron(state.rho(), s), state.dim_a(),
                                  state.dim_b() * static_cast<std::size_t>(s.rows()), tol);
}

BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& u,
                                     const ComplexMatrix& v) {
  if (u.rows() != static_cast<Eigen::Index>(state.dim_a()) ||
      v.rows() != static_cast<Eigen::Index>(state.dim_b())) {
    fail(ErrorKind::DimensionMismatch, "local unitary dimensions do not match the state");
  }
  const ComplexMatrix w = kron(u, v);
  return BipartiteState::validate(w * state.rho() * w.adjoint(), state.dim_a(), state.dim_b());
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    fail(ErrorKind::OutOfRange, fmt::format("rank {} outside [1, {}]", rank, dim));
  }
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::size_t rank, Rng& rng) {
  return BipartiteState::validate(random_density(dim_a * dim_b, rank, rng), dim_a, dim_b);
}

BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                            std::uint64_t seed) {
  Rng rng(seed);
  return random_state(dim_a, dim_b, rank, rng);
}

PureState random_pure_state(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  ComplexMatrix g = ginibre(dim_a * dim_b, 1, rng);
  return PureState::normalized(dim_a, dim_b, g.col(0));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex d = r(i, i);
    const double ad = std::abs(d);
    if (ad > 0.0) q.col(i) *= d / ad;
  }
  return q;
}

}  // namespace affdiscord
