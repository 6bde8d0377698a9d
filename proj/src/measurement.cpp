#include "affdiscord/measurement.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "affdiscord/errors.hpp"

namespace affdiscord {

MeasurementBasis MeasurementBasis::from_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    fail(ErrorKind::NonSquare, fmt::format("basis matrix is {}x{}", u.rows(), u.cols()));
  }
  const double defect = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > tol) {
    fail(ErrorKind::OutOfRange, fmt::format("basis is not orthonormal (defect {:.3e})", defect));
  }
  return MeasurementBasis(u);
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
  return MeasurementBasis(identity(dim));
}

MeasurementBasis MeasurementBasis::from_bloch_angles(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix v(2, 2);
  v(0, 0) = c;
  v(1, 0) = e * s;
  v(0, 1) = -std::conj(e) * s;
  v(1, 1) = c;
  return MeasurementBasis(v);
}

MeasurementBasis MeasurementBasis::from_bloch_vector(const RealVector& r) {
  if (r.size() != 3 || r.norm() == 0.0) {
    fail(ErrorKind::OutOfRange, "Bloch direction must be a nonzero 3-vector");
  }
  const RealVector u = r.normalized();
  const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
  const double phi = std::atan2(u[1], u[0]);
  return from_bloch_angles(theta, phi);
}

ComplexMatrix MeasurementBasis::projector(std::size_t k) const {
  const auto col = vectors_.col(static_cast<Eigen::Index>(k));
  return col * col.adjoint();
}

std::vector<ComplexMatrix> MeasurementBasis::projectors() const {
  std::vector<ComplexMatrix> out;
  out.reserve(dim());
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(projector(k));
  return out;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ClosedPure: return "closed-pure";
    case Method::Closed2xN: return "closed-2xn";
    case Method::Bound: return "bound";
    case Method::OptimizedGrid: return "optimized-grid";
    case Method::OptimizedLocal: return "optimized-local";
    case Method::FamilyAnalytic: return "family-analytic";
  }
  return "unknown";
}

}  // namespace affdiscord
