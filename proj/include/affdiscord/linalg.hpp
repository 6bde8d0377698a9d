#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "affdiscord/tolerances.hpp"

namespace affdiscord {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

double max_abs(const ComplexMatrix& m);

// Largest |M_ij - conj(M_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol);

/// Eigendecomposition of a Hermitian matrix. Throws NonSquare or NonHermitian.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = {});

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in [-tol.psd, 0) are clamped to zero before taking the root;
/// anything more negative raises NotPSD. Eigenvalues within roundoff of zero
/// (16 n eps lambda_max) map to exactly zero.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const Tolerances& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out one factor of a (dim_a * dim_b)-dimensional operator and returns
/// the reduced operator on the `keep` subsystem.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep);

double frobenius_norm_sq(const ComplexMatrix& m);

ComplexMatrix identity(std::size_t dim);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace affdiscord
