#pragma once

#include "affdiscord/measurement.hpp"
#include "affdiscord/optimizer.hpp"
#include "affdiscord/states.hpp"

namespace affdiscord {

/// A(rho, sigma) = Tr(sqrt(rho) sqrt(sigma)).
double affinity(const ComplexMatrix& rho, const ComplexMatrix& sigma, const Tolerances& tol = {});
double affinity(const BipartiteState& rho, const BipartiteState& sigma,
                const Tolerances& tol = {});

/// d_A = sqrt(1 - A).
double affinity_metric(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                       const Tolerances& tol = {});

/// sum_k (Pi_k (x) 1) op (Pi_k (x) 1) for a measurement on A.
ComplexMatrix pinch(const ComplexMatrix& op, const MeasurementBasis& basis, std::size_t dim_a,
                    std::size_t dim_b);

BipartiteState post_measurement(const BipartiteState& state, const MeasurementBasis& basis);

// Per-basis functionals. These evaluate full matrices directly and serve as
// the reference for the optimizer's compressed evaluation.

/// 1 - sum_k Tr[sqrt(rho) (Pi_k (x) 1) sqrt(rho) (Pi_k (x) 1)].
double affinity_discord_at(const BipartiteState& state, const MeasurementBasis& basis,
                           const Tolerances& tol = {});

/// 1 - A(rho, Pi(rho)), the affinity between the state and its measured image.
/// Never exceeds affinity_discord_at; the two agree when Pi(sqrt(rho)) equals
/// sqrt(Pi(rho)).
double affinity_discord_direct_at(const BipartiteState& state, const MeasurementBasis& basis,
                                  const Tolerances& tol = {});

/// sum_k d_A^2(rho, (Pi_k (x) 1) rho (Pi_k (x) 1)) with the unnormalized
/// projected terms taken literally. Diagnostic only.
double termwise_affinity_sum_at(const BipartiteState& state, const MeasurementBasis& basis,
                                const Tolerances& tol = {});

/// ||rho - Pi(rho)||^2.
double hs_discord_at(const BipartiteState& state, const MeasurementBasis& basis);

/// ||sqrt(rho) - Pi(sqrt(rho))||^2.
double remedied_hs_discord_at(const BipartiteState& state, const MeasurementBasis& basis,
                              const Tolerances& tol = {});

/// 1 - sum_k s_k^2 over the Schmidt spectrum.
DiscordResult pure_discord(const PureState& psi);

DiscordResult optimize_affinity_discord(const BipartiteState& state,
                                        const OptimizerOptions& options = {},
                                        const Tolerances& tol = {});
DiscordResult optimize_hs_discord(const BipartiteState& state,
                                  const OptimizerOptions& options = {});
DiscordResult optimize_remedied_hs_discord(const BipartiteState& state,
                                           const OptimizerOptions& options = {},
                                           const Tolerances& tol = {});

struct AncillaReport {
  double affinity_before = 0.0;
  double affinity_after = 0.0;
  double hs_before = 0.0;
  double hs_after = 0.0;
  double purity_sigma = 0.0;
};

/// Optimized affinity and Hilbert-Schmidt discords of `state` and of
/// state (x) sigma, with sigma appended to the unmeasured party.
AncillaReport ancilla_behavior_report(const BipartiteState& state, const ComplexMatrix& sigma,
                                      const OptimizerOptions& options = {},
                                      const Tolerances& tol = {});

}  // namespace affdiscord
