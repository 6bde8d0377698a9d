#include "affdiscord/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "affdiscord/errors.hpp"

namespace affdiscord {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= rel_tol * std::max(1.0, max_abs(m));
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    fail(ErrorKind::NonSquare, fmt::format("matrix is {}x{}", m.rows(), m.cols()));
  }
  if (!is_hermitian(m, tol.hermitian)) {
    fail(ErrorKind::NonHermitian,
         fmt::format("hermiticity defect {:.3e} exceeds tolerance", hermiticity_defect(m)));
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const Tolerances& tol) {
  auto eig = hermitian_eig(m, tol);
  const Eigen::Index n = eig.eigenvalues.size();
  // Eigenvalues at the solver's roundoff level are zeros; their square roots
  // (~1e-8) would otherwise swamp later comparisons.
  const double top = n > 0 ? std::max(eig.eigenvalues[n - 1], 0.0) : 0.0;
  const double floor = 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * top;
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lambda = eig.eigenvalues[i];
    if (lambda < -tol.psd) {
      fail(ErrorKind::NotPSD, fmt::format("eigenvalue {:.6e} below -{:.1e}", lambda, tol.psd));
    }
    roots[i] = lambda <= floor ? 0.0 : std::sqrt(lambda);
  }
  ComplexMatrix root = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (root + root.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem keep) {
  const auto total = static_cast<Eigen::Index>(dim_a * dim_b);
  if (m.rows() != total || m.cols() != total) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("operator is {}x{}, expected {}x{} for dims ({}, {})", m.rows(), m.cols(),
                     total, total, dim_a, dim_b));
  }
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index b = 0; b < db; ++b) out(i, j) += m(i * db + b, j * db + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index a = 0; a < da; ++a) out(i, j) += m(a * db + i, a * db + j);
  return out;
}

double frobenius_norm_sq(const ComplexMatrix& m) { return m.squaredNorm(); }

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

namespace pauli {

ComplexMatrix x() {
  ComplexMatrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

ComplexMatrix y() {
  ComplexMatrix s(2, 2);
  s << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return s;
}

ComplexMatrix z() {
  ComplexMatrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace pauli

}  // namespace affdiscord
