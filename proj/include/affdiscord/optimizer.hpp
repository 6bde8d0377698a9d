#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "affdiscord/measurement.hpp"

namespace affdiscord {

/// F(U) = sum_k || (<u_k| (x) 1) S (|u_k> (x) 1) ||_F^2 for the columns u_k of
/// a unitary U acting on subsystem A.
///
/// With S = sqrt(rho) this is the affinity functional
/// sum_k Tr[sqrt(rho) (Pi_k (x) 1) sqrt(rho) (Pi_k (x) 1)]; with S = rho it is
/// the squared norm of the measured state, which gives the Hilbert-Schmidt
/// discord as Tr(rho^2) - F.
class CompressedBlockObjective {
 public:
  CompressedBlockObjective(const ComplexMatrix& op, std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }

  double operator()(const ComplexMatrix& basis_vectors) const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  // blocks_[a * dim_a + a'] = <a| S |a'>, an n x n block.
  std::vector<ComplexMatrix> blocks_;
};

enum class Strategy { Grid, MultistartLocal, Hybrid };

struct OptimizerOptions {
  Strategy strategy = Strategy::Hybrid;
  // Functional evaluations. 0 picks the default for the strategy/dimension:
  // grid size (+ refine_evaluations for hybrid) on qubits, starts *
  // evaluations_per_start for multistart.
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::size_t grid_theta = 181;
  std::size_t grid_phi = 360;
  std::size_t refine_evaluations = 5000;
  std::size_t starts = 64;
  std::size_t evaluations_per_start = 2500;
  double rel_improvement = 1e-10;
};

inline constexpr std::size_t kMaxOptimizedDimA = 8;

struct OptimizationOutcome {
  double best = 0.0;               // maximal F found
  ComplexMatrix basis;             // columns = optimal |k>
  std::vector<double> parameters;  // (theta, phi) on qubit grid paths
  std::size_t evaluations = 0;
  Method method = Method::OptimizedGrid;
};

/// Maximizes F over projective measurements on A. Deterministic for a fixed
/// seed; the best value found never decreases as the budget grows.
OptimizationOutcome maximize_over_measurements(const CompressedBlockObjective& objective,
                                               const OptimizerOptions& options);

}  // namespace affdiscord
