#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "affdiscord/linalg.hpp"

namespace affdiscord {

/// A von Neumann measurement {|k><k|} on subsystem A, stored as the unitary
/// whose columns are the basis vectors |k>.
class MeasurementBasis {
 public:
  static MeasurementBasis from_unitary(const ComplexMatrix& u, double tol = 1e-10);
  static MeasurementBasis computational(std::size_t dim);

  // Qubit measurement Pi_(+/-) = (1 +/- r.sigma)/2 with
  // r = (sin t cos p, sin t sin p, cos t).
  static MeasurementBasis from_bloch_angles(double theta, double phi);
  static MeasurementBasis from_bloch_vector(const RealVector& r);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
  const ComplexMatrix& vectors() const noexcept { return vectors_; }
  ComplexMatrix projector(std::size_t k) const;
  std::vector<ComplexMatrix> projectors() const;

 private:
  explicit MeasurementBasis(ComplexMatrix v) : vectors_(std::move(v)) {}
  ComplexMatrix vectors_;
};

enum class Method {
  ClosedPure,
  Closed2xN,
  Bound,
  OptimizedGrid,
  OptimizedLocal,
  FamilyAnalytic,
};

std::string_view to_string(Method method);

struct DiscordResult {
  double value = 0.0;
  Method method = Method::OptimizedGrid;
  std::optional<MeasurementBasis> measurement;
  // Method-specific parameters: (theta, phi) for qubit optimizations, the
  // Bloch direction for the 2 x n closed form.
  std::vector<double> parameters;
  std::size_t evaluations = 0;
};

}  // namespace affdiscord
