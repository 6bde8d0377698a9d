#include "affdiscord/measures.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/SVD>

#include <fmt/format.h>

#include "affdiscord/errors.hpp"

namespace affdiscord {

namespace {

void require_basis_dim(const MeasurementBasis& basis, std::size_t dim_a) {
  if (basis.dim() != dim_a) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("measurement of dimension {} on a {}-dimensional party", basis.dim(), dim_a));
  }
}

ComplexMatrix lifted(const ComplexMatrix& projector, std::size_t dim_b) {
  return kron(projector, identity(dim_b));
}

DiscordResult to_result(const OptimizationOutcome& outcome, double value) {
  DiscordResult result;
  result.value = value;
  result.method = outcome.method;
  result.measurement = MeasurementBasis::from_unitary(outcome.basis, 1e-8);
  result.parameters = outcome.parameters;
  result.evaluations = outcome.evaluations;
  return result;
}

}  // namespace

double affinity(const ComplexMatrix& rho, const ComplexMatrix& sigma, const Tolerances& tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("affinity of {}x{} and {}x{} operators", rho.rows(), rho.cols(), sigma.rows(),
                     sigma.cols()));
  }
  const ComplexMatrix a = matrix_sqrt_psd(validate_density(rho, tol), tol);
  const ComplexMatrix b = matrix_sqrt_psd(validate_density(sigma, tol), tol);
  return (a * b).trace().real();
}

double affinity(const BipartiteState& rho, const BipartiteState& sigma, const Tolerances& tol) {
  return affinity(rho.rho(), sigma.rho(), tol);
}

double affinity_metric(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                       const Tolerances& tol) {
  return std::sqrt(std::max(0.0, 1.0 - affinity(rho, sigma, tol)));
}

ComplexMatrix pinch(const ComplexMatrix& op, const MeasurementBasis& basis, std::size_t dim_a,
                    std::size_t dim_b) {
  require_basis_dim(basis, dim_a);
  const auto total = static_cast<Eigen::Index>(dim_a * dim_b);
  if (op.rows() != total || op.cols() != total) {
    fail(ErrorKind::DimensionMismatch, "operator does not match subsystem dimensions");
  }
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const ComplexMatrix p = lifted(basis.projector(k), dim_b);
    out += p * op * p;
  }
  return out;
}

BipartiteState post_measurement(const BipartiteState& state, const MeasurementBasis& basis) {
  return BipartiteState::validate(pinch(state.rho(), basis, state.dim_a(), state.dim_b()),
                                  state.dim_a(), state.dim_b());
}

double affinity_discord_at(const BipartiteState& state, const MeasurementBasis& basis,
                           const Tolerances& tol) {
  require_basis_dim(basis, state.dim_a());
  const ComplexMatrix root = matrix_sqrt_psd(state.rho(), tol);
  double total = 0.0;
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const ComplexMatrix p = lifted(basis.projector(k), state.dim_b());
    total += (root * p * root * p).trace().real();
  }
  return 1.0 - total;
}

double affinity_discord_direct_at(const BipartiteState& state, const MeasurementBasis& basis,
                                  const Tolerances& tol) {
  const BipartiteState measured = post_measurement(state, basis);
  return 1.0 - affinity(state, measured, tol);
}

double termwise_affinity_sum_at(const BipartiteState& state, const MeasurementBasis& basis,
                                const Tolerances& tol) {
  require_basis_dim(basis, state.dim_a());
  const ComplexMatrix root = matrix_sqrt_psd(state.rho(), tol);
  double total = 0.0;
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const ComplexMatrix p = lifted(basis.projector(k), state.dim_b());
    const ComplexMatrix term = p * state.rho() * p;
    total += 1.0 - (root * matrix_sqrt_psd(0.5 * (term + term.adjoint()), tol)).trace().real();
  }
  return total;
}

double hs_discord_at(const BipartiteState& state, const MeasurementBasis& basis) {
  return frobenius_norm_sq(state.rho() - pinch(state.rho(), basis, state.dim_a(), state.dim_b()));
}

double remedied_hs_discord_at(const BipartiteState& state, const MeasurementBasis& basis,
                              const Tolerances& tol) {
  const ComplexMatrix root = matrix_sqrt_psd(state.rho(), tol);
  return frobenius_norm_sq(root - pinch(root, basis, state.dim_a(), state.dim_b()));
}

DiscordResult pure_discord(const PureState& psi) {
  const SchmidtSpectrum s = schmidt_spectrum(psi);
  const double sum_sq = std::accumulate(s.coefficients.begin(), s.coefficients.end(), 0.0,
                                        [](double acc, double c) { return acc + c * c; });
  DiscordResult result;
  result.value = 1.0 - sum_sq;
  result.method = Method::ClosedPure;
  result.parameters = s.coefficients;
  // Measuring A in its Schmidt basis attains the optimum.
  Eigen::JacobiSVD<ComplexMatrix> svd(psi.coefficient_matrix(), Eigen::ComputeFullU);
  result.measurement = MeasurementBasis::from_unitary(svd.matrixU());
  result.evaluations = 1;
  return result;
}

DiscordResult optimize_affinity_discord(const BipartiteState& state,
                                        const OptimizerOptions& options, const Tolerances& tol) {
  const CompressedBlockObjective objective(matrix_sqrt_psd(state.rho(), tol), state.dim_a(),
                                           state.dim_b());
  const OptimizationOutcome outcome = maximize_over_measurements(objective, options);
  return to_result(outcome, 1.0 - outcome.best);
}

DiscordResult optimize_hs_discord(const BipartiteState& state, const OptimizerOptions& options) {
  const CompressedBlockObjective objective(state.rho(), state.dim_a(), state.dim_b());
  const OptimizationOutcome outcome = maximize_over_measurements(objective, options);
  // ||rho - Pi(rho)||^2 = ||rho||^2 - ||Pi(rho)||^2 since pinching is an
  // orthogonal projection.
  return to_result(outcome, state.purity() - outcome.best);
}

DiscordResult optimize_remedied_hs_discord(const BipartiteState& state,
                                           const OptimizerOptions& options,
                                           const Tolerances& tol) {
  const ComplexMatrix root = matrix_sqrt_psd(state.rho(), tol);
  const CompressedBlockObjective objective(root, state.dim_a(), state.dim_b());
  const OptimizationOutcome outcome = maximize_over_measurements(objective, options);
  return to_result(outcome, frobenius_norm_sq(root) - outcome.best);
}

AncillaReport ancilla_behavior_report(const BipartiteState& state, const ComplexMatrix& sigma,
                                      const OptimizerOptions& options, const Tolerances& tol) {
  const ComplexMatrix clean_sigma = validate_density(sigma, tol);
  const BipartiteState enlarged = append_ancilla(state, clean_sigma, tol);
  AncillaReport report;
  report.affinity_before = optimize_affinity_discord(state, options, tol).value;
  report.affinity_after = optimize_affinity_discord(enlarged, options, tol).value;
  report.hs_before = optimize_hs_discord(state, options).value;
  report.hs_after = optimize_hs_discord(enlarged, options).value;
  report.purity_sigma = (clean_sigma * clean_sigma).trace().real();
  return report;
}

}  // namespace affdiscord
