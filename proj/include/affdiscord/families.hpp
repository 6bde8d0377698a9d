#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "affdiscord/optimizer.hpp"
#include "affdiscord/tolerances.hpp"

namespace affdiscord {

/// Spectral data of a Bell-diagonal state: eigenvalues lambda_ab in the
/// order (00, 01, 10, 11), h = sum_ab sqrt(lambda_ab) and the coefficients d_j
/// of sqrt(rho) = (h 1(x)1 + sum_j d_j sigma_j (x) sigma_j) / 4.
///
/// d_j = sum_ab <beta_ab| sigma_j (x) sigma_j |beta_ab> sqrt(lambda_ab), so
/// d_1 carries signs (+,+,-,-), d_2 (-,+,+,-) and d_3 (+,-,+,-).
struct BellDiagonalSpectrumData {
  std::array<double, 4> lambdas{};
  double h = 0.0;
  std::array<double, 3> d{};
};

BellDiagonalSpectrumData bell_diagonal_spectrum(double c1, double c2, double c3,
                                                const Tolerances& tol = {});
ComplexMatrix bell_diagonal_sqrt(const BellDiagonalSpectrumData& data);

/// 1 - (h^2 + max_j d_j^2) / 4.
double bell_diagonal_discord(double c1, double c2, double c3, const Tolerances& tol = {});

/// Hilbert-Schmidt discord (c1^2 + c2^2 + c3^2 - max_j c_j^2) / 4.
double bell_diagonal_hs_discord(double c1, double c2, double c3, const Tolerances& tol = {});

struct FamilyDiscords {
  double affinity = 0.0;
  double hs = 0.0;
};

/// (1 + p - sqrt((1 - p)(1 + 3p))) / 4 and p^2 / 2, p in [-1/3, 1].
FamilyDiscords werner_two_qubit_discords(double p, const Tolerances& tol = {});

/// m x m Werner state with flip expectation x in [-1, 1].
FamilyDiscords werner_general_discords(std::size_t m, double x, const Tolerances& tol = {});

enum class IsotropicHsForm {
  Squared,            // (m^2 x - 1)^2 / (m (m-1) (m+1)^2), limit x^2
  LiteralFirstPower,  // (m^2 x - 1) / (m (m-1) (m+1)^2), comparison only
};

/// m x m isotropic state with singlet fidelity x in [0, 1].
FamilyDiscords isotropic_discords(std::size_t m, double x,
                                  IsotropicHsForm form = IsotropicHsForm::Squared,
                                  const Tolerances& tol = {});

// m -> infinity limits.
double werner_affinity_limit(double x);
double isotropic_affinity_limit(double x);
double isotropic_hs_limit(double x);

enum class Family { Werner2, BellDiagonal, Werner, Isotropic };
enum class Measure { Affinity, HilbertSchmidt, Remedied };

Family parse_family(std::string_view name);
std::string_view to_string(Family family);
Measure parse_measure(std::string_view name);
std::string_view to_string(Measure measure);

/// `steps` evenly spaced points from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, std::size_t steps);

/// Uniformly sampled valid Bell-diagonal correlation triples.
std::vector<std::array<double, 3>> random_bell_triples(std::size_t count, std::uint64_t seed);

struct SweepSpec {
  Family family = Family::Werner2;
  std::size_t m = 2;                              // Werner / isotropic dimension
  std::vector<double> params;                     // scalar families
  std::vector<std::array<double, 3>> triples;     // Bell-diagonal family
  std::vector<Measure> measures{Measure::Affinity, Measure::HilbertSchmidt};
  OptimizerOptions options;
};

struct SweepRow {
  Family family = Family::Werner2;
  std::string param;
  Measure measure = Measure::Affinity;
  double analytic = 0.0;
  double optimized = 0.0;
  double gap = 0.0;
};

/// Analytic value and optimizer result for every grid point and measure.
/// Rows are ordered by grid index, then by measure order in the spec.
std::vector<SweepRow> sweep(const SweepSpec& spec);

/// CSV with header family,param,measure,analytic,optimized,gap and 12
/// significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace affdiscord
