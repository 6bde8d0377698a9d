#include "affdiscord/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "affdiscord/errors.hpp"

namespace affdiscord {

OperatorBasis gell_mann_basis(std::size_t dim) {
  if (dim < 1) fail(ErrorKind::OutOfRange, "operator basis dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  OperatorBasis basis{dim, {}};
  basis.operators.reserve(dim * dim);
  basis.operators.push_back(identity(dim) / std::sqrt(static_cast<double>(dim)));

  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(j, k) = inv_sqrt2;
      s(k, j) = inv_sqrt2;
      basis.operators.push_back(std::move(s));
    }
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(j, k) = Complex(0.0, -inv_sqrt2);
      a(k, j) = Complex(0.0, inv_sqrt2);
      basis.operators.push_back(std::move(a));
    }
  for (Eigen::Index l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -static_cast<double>(l) * scale;
    basis.operators.push_back(std::move(g));
  }
  return basis;
}

CorrelationMatrix correlation_matrix(const BipartiteState& state, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b, const Tolerances& tol) {
  if (basis_a.dim != state.dim_a() || basis_b.dim != state.dim_b()) {
    fail(ErrorKind::DimensionMismatch,
         fmt::format("bases of dims ({}, {}) for a ({}, {}) state", basis_a.dim, basis_b.dim,
                     state.dim_a(), state.dim_b()));
  }
  const ComplexMatrix root = matrix_sqrt_psd(state.rho(), tol);
  const auto m = static_cast<Eigen::Index>(state.dim_a());
  const auto n = static_cast<Eigen::Index>(state.dim_b());
  const auto rows = static_cast<Eigen::Index>(basis_a.operators.size());
  const auto cols = static_cast<Eigen::Index>(basis_b.operators.size());

  CorrelationMatrix cm{RealMatrix::Zero(rows, cols), state.dim_a(), state.dim_b()};
  double worst_imag = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const ComplexMatrix& x = basis_a.operators[static_cast<std::size_t>(i)];
    // T[b][b'] = sum_{a,a'} X[a'][a] S[(a,b),(a',b')], so gamma_ij = Tr(T Y_j).
    ComplexMatrix t = ComplexMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < m; ++a)
      for (Eigen::Index ap = 0; ap < m; ++ap) {
        const Complex w = x(ap, a);
        if (w == Complex(0.0, 0.0)) continue;
        t += w * root.block(a * n, ap * n, n, n);
      }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Complex g = (t * basis_b.operators[static_cast<std::size_t>(j)]).trace();
      worst_imag = std::max(worst_imag, std::abs(g.imag()));
      cm.gamma(i, j) = g.real();
    }
  }
  if (worst_imag > tol.imag_residue) {
    fail(ErrorKind::NonHermitian,
         fmt::format("correlation coefficient has imaginary residue {:.3e}", worst_imag));
  }
  return cm;
}

CorrelationMatrix correlation_matrix(const BipartiteState& state, const Tolerances& tol) {
  return correlation_matrix(state, gell_mann_basis(state.dim_a()), gell_mann_basis(state.dim_b()),
                            tol);
}

ComplexMatrix reconstruct_operator(const CorrelationMatrix& cm, const OperatorBasis& basis_a,
                                   const OperatorBasis& basis_b) {
  const auto dim = static_cast<Eigen::Index>(cm.dim_a * cm.dim_b);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < cm.gamma.rows(); ++i)
    for (Eigen::Index j = 0; j < cm.gamma.cols(); ++j) {
      const double g = cm.gamma(i, j);
      if (g == 0.0) continue;
      out += g * kron(basis_a.operators[static_cast<std::size_t>(i)],
                      basis_b.operators[static_cast<std::size_t>(j)]);
    }
  return out;
}

GammaPartition partition_gamma(const CorrelationMatrix& cm) {
  if (cm.dim_a != 2) {
    fail(ErrorKind::WrongDimension,
         fmt::format("partition needs a qubit A side, got dim_a = {}", cm.dim_a));
  }
  return {cm.gamma.row(0).transpose(), cm.gamma.bottomRows(3)};
}

double lower_bound(const BipartiteState& state, const Tolerances& tol) {
  const CorrelationMatrix cm = correlation_matrix(state, tol);
  const RealMatrix gram = cm.gamma * cm.gamma.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const RealVector& mu = solver.eigenvalues();  // ascending
  double top = 0.0;
  const auto m = static_cast<Eigen::Index>(state.dim_a());
  for (Eigen::Index i = 0; i < m; ++i) top += mu[mu.size() - 1 - i];
  return 1.0 - top;
}

double lower_bound_clamped(const BipartiteState& state, const Tolerances& tol) {
  return std::max(lower_bound(state, tol), 0.0);
}

DiscordResult closed_form_2xn(const BipartiteState& state, const Tolerances& tol) {
  if (state.dim_a() != 2) {
    fail(ErrorKind::WrongDimension,
         fmt::format("closed form needs dim_a = 2, got {}", state.dim_a()));
  }
  const GammaPartition part = partition_gamma(correlation_matrix(state, tol));
  const RealMatrix zz = part.z * part.z.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(zz);
  const double z_max = solver.eigenvalues()[2];
  const RealVector r = solver.eigenvectors().col(2);

  DiscordResult result;
  result.value = 1.0 - part.v.squaredNorm() - z_max;
  result.method = Method::Closed2xN;
  result.measurement = MeasurementBasis::from_bloch_vector(r);
  result.parameters = {r[0], r[1], r[2]};
  result.evaluations = 1;
  return result;
}

}  // namespace affdiscord
