#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "affdiscord/linalg.hpp"
#include "affdiscord/tolerances.hpp"

namespace affdiscord {

using Rng = std::mt19937_64;

/// A validated density matrix on C^m (x) C^n. Only obtainable through
/// `validate` or the constructors below, so every instance is Hermitian,
/// positive semidefinite and unit-trace.
class BipartiteState {
 public:
  static BipartiteState validate(const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b,
                                 const Tolerances& tol = {});

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& rho() const noexcept { return rho_; }

  double purity() const;
  ComplexMatrix marginal(Subsystem keep) const;
  RealVector spectrum() const;  // ascending

 private:
  BipartiteState(ComplexMatrix rho, std::size_t dim_a, std::size_t dim_b)
      : dim_a_(dim_a), dim_b_(dim_b), rho_(std::move(rho)) {}

  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix rho_;
};

/// Checks that `sigma` is a density matrix on a single system and returns a
/// cleaned (exactly Hermitian, clamped) copy.
ComplexMatrix validate_density(const ComplexMatrix& sigma, const Tolerances& tol = {});

class PureState {
 public:
  // amplitudes indexed as a * dim_b + b; must already have unit norm.
  PureState(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes,
            const Tolerances& tol = {});

  static PureState normalized(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  // m x n coefficient matrix C with |psi> = sum_ab C_ab |a>|b>.
  ComplexMatrix coefficient_matrix() const;
  BipartiteState density() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexVector amplitudes_;
};

struct SchmidtSpectrum {
  std::vector<double> coefficients;  // descending, length min(m, n)
};

SchmidtSpectrum schmidt_spectrum(const PureState& psi);

// Bell vector |beta_ab> = (|0,b> + (-1)^a |1,1+b>) / sqrt(2).
ComplexVector bell_vector(int a, int b);

// (1/sqrt(m)) sum_i |ii>
ComplexVector maximally_entangled_vector(std::size_t m);

// Swap operator F = sum_kl |kl><lk| on C^m (x) C^m.
ComplexMatrix swap_operator(std::size_t m);

/// Bell-diagonal eigenvalues lambda_ab for the correlation triple, ordered
/// (00, 01, 10, 11).
std::array<double, 4> bell_diagonal_eigenvalues(double c1, double c2, double c3);

BipartiteState bell_diagonal(double c1, double c2, double c3, const Tolerances& tol = {});
BipartiteState werner_two_qubit(double p);
BipartiteState werner_general(std::size_t m, double x);
BipartiteState isotropic(std::size_t m, double x);
BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                             const Tolerances& tol = {});
BipartiteState classical_quantum(std::span<const double> probs,
                                 std::span<const ComplexMatrix> states_b,
                                 const Tolerances& tol = {});
BipartiteState append_ancilla(const BipartiteState& state, const ComplexMatrix& sigma,
                              const Tolerances& tol = {});

/// Applies (U (x) V) rho (U (x) V)^dagger.
BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& u,
                                     const ComplexMatrix& v);

// Ginibre-induced random states. Deterministic for a fixed seed.
BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::size_t rank,
                            std::uint64_t seed);
BipartiteState random_state(std::size_t dim_a, std::size_t dim_b, std::size_t rank, Rng& rng);
PureState random_pure_state(std::size_t dim_a, std::size_t dim_b, Rng& rng);
ComplexMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace affdiscord
