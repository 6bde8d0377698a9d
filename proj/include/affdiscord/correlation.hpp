#pragma once

#include <cstddef>
#include <vector>

#include "affdiscord/measurement.hpp"
#include "affdiscord/states.hpp"

namespace affdiscord {

/// Orthonormal Hermitian operator basis {X_i} of a d-dimensional system,
/// Tr(X_i X_j) = delta_ij, with X_0 = 1/sqrt(d).
struct OperatorBasis {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> operators;
};

/// Identity first, then the generalized Gell-Mann matrices in the order
/// symmetric pairs (j < k), antisymmetric pairs (j < k), diagonal matrices.
/// Every element is scaled to unit Hilbert-Schmidt norm. For d = 2 this is
/// {1, sigma_x, sigma_y, sigma_z} / sqrt(2).
OperatorBasis gell_mann_basis(std::size_t dim);

/// Coefficients of sqrt(rho) in the product basis {X_i (x) Y_j}:
/// gamma_ij = Tr(sqrt(rho) X_i (x) Y_j), an m^2 x n^2 real matrix.
struct CorrelationMatrix {
  RealMatrix gamma;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
};

CorrelationMatrix correlation_matrix(const BipartiteState& state, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b, const Tolerances& tol = {});
CorrelationMatrix correlation_matrix(const BipartiteState& state, const Tolerances& tol = {});

/// Sum_ij gamma_ij X_i (x) Y_j; reproduces sqrt(rho).
ComplexMatrix reconstruct_operator(const CorrelationMatrix& cm, const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b);

/// Qubit-side split of gamma: v is the X_0 row, z the three Pauli rows.
struct GammaPartition {
  RealVector v;
  RealMatrix z;
};

GammaPartition partition_gamma(const CorrelationMatrix& cm);

/// 1 - (sum of the dim_a largest eigenvalues of Gamma Gamma^T). Not clamped;
/// it can be negative for highly mixed states.
double lower_bound(const BipartiteState& state, const Tolerances& tol = {});
double lower_bound_clamped(const BipartiteState& state, const Tolerances& tol = {});

/// Exact affinity discord for dim_a = 2: 1 - |v|^2 - lambda_max(Z Z^T). The
/// optimal measurement is along the top eigenvector of Z Z^T.
DiscordResult closed_form_2xn(const BipartiteState& state, const Tolerances& tol = {});

}  // namespace affdiscord
