#include "affdiscord/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "affdiscord/errors.hpp"
#include "affdiscord/measures.hpp"
#include "affdiscord/states.hpp"

namespace affdiscord {

namespace {

constexpr double kRangeSlack = 1e-12;

double clamped_sqrt(double radicand, const Tolerances& tol) {
  if (radicand < 0.0 && radicand >= -tol.radicand) return 0.0;
  return std::sqrt(radicand);
}

void require_in_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo - kRangeSlack && value <= hi + kRangeSlack)) {
    fail(ErrorKind::OutOfRange, fmt::format("{} = {} outside [{}, {}]", name, value, lo, hi));
  }
}

void require_dimension(std::size_t m) {
  if (m < 2) fail(ErrorKind::OutOfRange, fmt::format("family dimension {} < 2", m));
}

// <beta_ab| sigma_j (x) sigma_j |beta_ab> for ab = 00, 01, 10, 11.
constexpr std::array<std::array<double, 4>, 3> kBellCorrelationSigns{{
    {1.0, 1.0, -1.0, -1.0},
    {-1.0, 1.0, 1.0, -1.0},
    {1.0, -1.0, 1.0, -1.0},
}};

}  // namespace

BellDiagonalSpectrumData bell_diagonal_spectrum(double c1, double c2, double c3,
                                                const Tolerances& tol) {
  BellDiagonalSpectrumData data;
  data.lambdas = bell_diagonal_eigenvalues(c1, c2, c3);
  std::array<double, 4> roots{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (data.lambdas[i] < -tol.bloch) {
      fail(ErrorKind::InvalidBlochVector,
           fmt::format("c = ({}, {}, {}) gives Bell eigenvalue {}", c1, c2, c3, data.lambdas[i]));
    }
    // Eigenvalues that vanish analytically come out as +-1e-17.
    if (data.lambdas[i] < 8.0 * std::numeric_limits<double>::epsilon()) data.lambdas[i] = 0.0;
    roots[i] = std::sqrt(data.lambdas[i]);
    data.h += roots[i];
  }
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 4; ++i) data.d[j] += kBellCorrelationSigns[j][i] * roots[i];
  return data;
}

ComplexMatrix bell_diagonal_sqrt(const BellDiagonalSpectrumData& data) {
  ComplexMatrix root = data.h * identity(4);
  root += data.d[0] * kron(pauli::x(), pauli::x());
  root += data.d[1] * kron(pauli::y(), pauli::y());
  root += data.d[2] * kron(pauli::z(), pauli::z());
  return 0.25 * root;
}

double bell_diagonal_discord(double c1, double c2, double c3, const Tolerances& tol) {
  const auto data = bell_diagonal_spectrum(c1, c2, c3, tol);
  double max_d2 = 0.0;
  for (double d : data.d) max_d2 = std::max(max_d2, d * d);
  return 1.0 - 0.25 * (data.h * data.h + max_d2);
}

double bell_diagonal_hs_discord(double c1, double c2, double c3, const Tolerances& tol) {
  (void)bell_diagonal_spectrum(c1, c2, c3, tol);
  const double sum = c1 * c1 + c2 * c2 + c3 * c3;
  const double top = std::max({c1 * c1, c2 * c2, c3 * c3});
  return 0.25 * (sum - top);
}

FamilyDiscords werner_two_qubit_discords(double p, const Tolerances& tol) {
  require_in_range(p, -1.0 / 3.0, 1.0, "p");
  const double root = clamped_sqrt((1.0 - p) * (1.0 + 3.0 * p), tol);
  return {0.25 * (1.0 + p - root), 0.5 * p * p};
}

FamilyDiscords werner_general_discords(std::size_t m, double x, const Tolerances& tol) {
  require_dimension(m);
  require_in_range(x, -1.0, 1.0, "x");
  const double md = static_cast<double>(m);
  const double root = clamped_sqrt((md - 1.0) / (md + 1.0) * (1.0 - x * x), tol);
  double affinity = 0.5 * ((md - x) / (md + 1.0) - root);
  if (affinity < 0.0 && affinity >= -1e-12) affinity = 0.0;
  const double hs = (md * x - 1.0) * (md * x - 1.0) / (md * (md - 1.0) * (md + 1.0) * (md + 1.0));
  return {affinity, hs};
}

FamilyDiscords isotropic_discords(std::size_t m, double x, IsotropicHsForm form,
                                  const Tolerances& tol) {
  require_dimension(m);
  require_in_range(x, 0.0, 1.0, "x");
  const double md = static_cast<double>(m);
  const double diff = clamped_sqrt((md - 1.0) * x, tol) - clamped_sqrt((1.0 - x) / (md + 1.0), tol);
  const double affinity = diff * diff / md;
  const double lead = md * md * x - 1.0;
  const double denom = md * (md - 1.0) * (md + 1.0) * (md + 1.0);
  const double hs = form == IsotropicHsForm::Squared ? lead * lead / denom : lead / denom;
  return {affinity, hs};
}

double werner_affinity_limit(double x) { return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - x * x))); }
double isotropic_affinity_limit(double x) { return x; }
double isotropic_hs_limit(double x) { return x * x; }

Family parse_family(std::string_view name) {
  if (name == "werner2") return Family::Werner2;
  if (name == "belldiag") return Family::BellDiagonal;
  if (name == "werner") return Family::Werner;
  if (name == "isotropic") return Family::Isotropic;
  fail(ErrorKind::UnknownFamily, fmt::format("unknown family '{}'", name));
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Werner2: return "werner2";
    case Family::BellDiagonal: return "belldiag";
    case Family::Werner: return "werner";
    case Family::Isotropic: return "isotropic";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  if (name == "affinity") return Measure::Affinity;
  if (name == "hs") return Measure::HilbertSchmidt;
  if (name == "remedied") return Measure::Remedied;
  fail(ErrorKind::OutOfRange, fmt::format("unknown measure '{}'", name));
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::Affinity: return "affinity";
    case Measure::HilbertSchmidt: return "hs";
    case Measure::Remedied: return "remedied";
  }
  return "unknown";
}

std::vector<double> linspace(double from, double to, std::size_t steps) {
  if (steps == 0 || !(from <= to) || !std::isfinite(from) || !std::isfinite(to)) {
    fail(ErrorKind::OutOfRange, fmt::format("bad grid from {} to {} in {} steps", from, to, steps));
  }
  if (steps == 1) return {from};
  std::vector<double> out(steps);
  const double h = (to - from) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = from + h * static_cast<double>(i);
  out.back() = to;
  return out;
}

std::vector<std::array<double, 3>> random_bell_triples(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<std::array<double, 3>> out;
  out.reserve(count);
  while (out.size() < count) {
    std::array<double, 3> c{uniform(rng), uniform(rng), uniform(rng)};
    const auto lambdas = bell_diagonal_eigenvalues(c[0], c[1], c[2]);
    if (std::all_of(lambdas.begin(), lambdas.end(), [](double l) { return l >= 0.0; })) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  struct Point {
    std::string label;
    BipartiteState state;
    FamilyDiscords analytic;
  };
  std::vector<Point> points;
  if (spec.family == Family::BellDiagonal) {
    for (const auto& c : spec.triples) {
      points.push_back({fmt::format("{:.12g};{:.12g};{:.12g}", c[0], c[1], c[2]),
                        bell_diagonal(c[0], c[1], c[2]),
                        {bell_diagonal_discord(c[0], c[1], c[2]),
                         bell_diagonal_hs_discord(c[0], c[1], c[2])}});
    }
  } else {
    for (double x : spec.params) {
      std::string label = fmt::format("{:.12g}", x);
      switch (spec.family) {
        case Family::Werner2:
          points.push_back({label, werner_two_qubit(x), werner_two_qubit_discords(x)});
          break;
        case Family::Werner:
          points.push_back({label, werner_general(spec.m, x), werner_general_discords(spec.m, x)});
          break;
        case Family::Isotropic:
          points.push_back({label, isotropic(spec.m, x), isotropic_discords(spec.m, x)});
          break;
        case Family::BellDiagonal:
          break;
      }
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(points.size() * spec.measures.size());
  for (const Point& point : points) {
    for (Measure measure : spec.measures) {
      SweepRow row;
      row.family = spec.family;
      row.param = point.label;
      row.measure = measure;
      switch (measure) {
        case Measure::Affinity:
          row.analytic = point.analytic.affinity;
          row.optimized = optimize_affinity_discord(point.state, spec.options).value;
          break;
        case Measure::HilbertSchmidt:
          row.analytic = point.analytic.hs;
          row.optimized = optimize_hs_discord(point.state, spec.options).value;
          break;
        case Measure::Remedied:
          // ||sqrt(rho)||^2 = 1, so the remedied discord coincides with the
          // affinity discord.
          row.analytic = point.analytic.affinity;
          row.optimized = optimize_remedied_hs_discord(point.state, spec.options).value;
          break;
      }
      row.gap = std::abs(row.analytic - row.optimized);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "family,param,measure,analytic,optimized,gap\n";
  for (const SweepRow& row : rows) {
    out << fmt::format("{},{},{},{:.12g},{:.12g},{:.12g}\n", to_string(row.family), row.param,
                       to_string(row.measure), row.analytic, row.optimized, row.gap);
  }
}

}  // namespace affdiscord
