#include "affdiscord/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include <fmt/format.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "affdiscord/errors.hpp"
#include "affdiscord/states.hpp"

namespace affdiscord {

CompressedBlockObjective::CompressedBlockObjective(const ComplexMatrix& op, std::size_t dim_a,
                                                   std::size_t dim_b)
    : dim_a_(dim_a), dim_b_(dim_b) {
  const auto m = static_cast<Eigen::Index>(dim_a);
  const auto n = static_cast<Eigen::Index>(dim_b);
  if (op.rows() != m * n || op.cols() != m * n) {
    fail(ErrorKind::DimensionMismatch, "operator does not match subsystem dimensions");
  }
  blocks_.reserve(dim_a * dim_a);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index ap = 0; ap < m; ++ap) blocks_.push_back(op.block(a * n, ap * n, n, n));
}

double CompressedBlockObjective::operator()(const ComplexMatrix& basis_vectors) const {
  const auto m = static_cast<Eigen::Index>(dim_a_);
  const auto n = static_cast<Eigen::Index>(dim_b_);
  ComplexMatrix block(n, n);
  double total = 0.0;
  for (Eigen::Index k = 0; k < basis_vectors.cols(); ++k) {
    block.setZero();
    for (Eigen::Index a = 0; a < m; ++a) {
      const Complex ca = std::conj(basis_vectors(a, k));
      for (Eigen::Index ap = 0; ap < m; ++ap) {
        const Complex w = ca * basis_vectors(ap, k);
        block += w * blocks_[static_cast<std::size_t>(a * m + ap)];
      }
    }
    total += block.squaredNorm();
  }
  return total;
}

namespace {

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter>;
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

// A capped local search. Evaluations past the cap are not performed; the
// minimizer sees a large penalty and the caller stops iterating.
struct LocalProblem {
  const CompressedBlockObjective* objective = nullptr;
  std::function<ComplexMatrix(const double*)> to_basis;
  std::size_t cap = 0;
  std::size_t used = 0;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  ComplexMatrix best_basis;

  bool exhausted() const { return used >= cap; }

  double evaluate(const double* x, std::size_t nparams) {
    if (exhausted()) return std::numeric_limits<double>::quiet_NaN();
    ++used;
    ComplexMatrix basis = to_basis(x);
    const double f = (*objective)(basis);
    if (f > best) {
      best = f;
      best_x.assign(x, x + nparams);
      best_basis = std::move(basis);
    }
    return f;
  }
};

double penalized_negative(const gsl_vector* x, void* params) {
  auto* problem = static_cast<LocalProblem*>(params);
  const double f = problem->evaluate(x->data, x->size);
  return std::isnan(f) ? 1e300 : -f;
}

// Nelder-Mead (GSL nmsimplex2) from x0 until the simplex collapses below
// size_tol or the evaluation cap is reached.
void nelder_mead(LocalProblem& problem, const std::vector<double>& x0, double step,
                 double size_tol) {
  const std::size_t n = x0.size();
  if (problem.exhausted()) return;

  VectorPtr x(gsl_vector_alloc(n));
  VectorPtr steps(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set(steps.get(), i, step);
  }
  gsl_multimin_function fn{&penalized_negative, n, &problem};
  MinimizerPtr solver(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), steps.get());

  while (!problem.exhausted()) {
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(solver.get());
    if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) break;
  }
}

// Repeated Nelder-Mead runs, each restarted at the incumbent, until a restart
// no longer improves by more than rel_improvement.
void restarted_search(LocalProblem& problem, std::vector<double> x0, double step,
                      double restart_step, double rel_improvement,
                      const std::function<std::vector<double>(LocalProblem&)>& recenter) {
  double previous = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 50 && !problem.exhausted(); ++round) {
    nelder_mead(problem, x0, step, 1e-10);
    if (problem.best - previous <= rel_improvement * std::max(1.0, std::abs(problem.best))) break;
    previous = problem.best;
    x0 = recenter(problem);
    step = restart_step;
  }
}

ComplexMatrix hermitian_exp_i(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  ComplexVector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases[i] = std::polar(1.0, solver.eigenvalues()[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// Off-diagonal Hermitian generator; diagonal phases do not change projectors.
ComplexMatrix generator(const double* x, Eigen::Index m) {
  ComplexMatrix h = ComplexMatrix::Zero(m, m);
  std::size_t idx = 0;
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = j + 1; k < m; ++k) {
      const Complex z(x[idx], x[idx + 1]);
      idx += 2;
      h(j, k) = z;
      h(k, j) = std::conj(z);
    }
  return h;
}

std::size_t default_budget(const OptimizerOptions& options, std::size_t m) {
  if (options.budget > 0) return options.budget;
  const std::size_t grid = options.grid_theta * options.grid_phi;
  if (m == 2 && options.strategy == Strategy::Grid) return grid;
  if (m == 2 && options.strategy == Strategy::Hybrid) return grid + options.refine_evaluations;
  return options.starts * options.evaluations_per_start;
}

OptimizationOutcome qubit_grid(const CompressedBlockObjective& objective,
                               const OptimizerOptions& options, std::size_t budget,
                               bool refine) {
  OptimizationOutcome out;
  out.method = Method::OptimizedGrid;
  out.best = -std::numeric_limits<double>::infinity();
  const std::size_t nt = std::max<std::size_t>(options.grid_theta, 2);
  const std::size_t np = std::max<std::size_t>(options.grid_phi, 1);
  const double dtheta = std::numbers::pi / static_cast<double>(nt - 1);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(np);

  double best_theta = 0.0;
  double best_phi = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < nt && used < budget; ++i) {
    for (std::size_t j = 0; j < np && used < budget; ++j) {
      const double theta = dtheta * static_cast<double>(i);
      const double phi = dphi * static_cast<double>(j);
      ++used;
      MeasurementBasis basis = MeasurementBasis::from_bloch_angles(theta, phi);
      const double f = objective(basis.vectors());
      if (f > out.best) {
        out.best = f;
        out.basis = basis.vectors();
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  out.parameters = {best_theta, best_phi};

  if (refine && used < budget) {
    out.method = Method::OptimizedLocal;
    LocalProblem problem;
    problem.objective = &objective;
    problem.to_basis = [](const double* x) {
      return MeasurementBasis::from_bloch_angles(x[0], x[1]).vectors();
    };
    problem.cap = budget - used;
    problem.best = out.best;
    problem.best_x = out.parameters;
    problem.best_basis = out.basis;
    restarted_search(problem, out.parameters, std::max(dtheta, dphi) * 0.5,
                     std::max(dtheta, dphi) * 0.05, options.rel_improvement,
                     [](LocalProblem& p) { return p.best_x; });
    used += problem.used;
    out.best = problem.best;
    out.basis = problem.best_basis;
    out.parameters = problem.best_x;
  }
  out.evaluations = used;
  return out;
}

OptimizationOutcome multistart(const CompressedBlockObjective& objective,
                               const OptimizerOptions& options, std::size_t budget) {
  const auto m = static_cast<Eigen::Index>(objective.dim_a());
  const std::size_t nparams = static_cast<std::size_t>(m * (m - 1));
  // Small budgets run fewer starts so the total never exceeds the budget.
  const std::size_t starts = std::max<std::size_t>(std::min(options.starts, budget), 1);
  const std::size_t per_start = std::max<std::size_t>(budget / starts, 1);

  OptimizationOutcome out;
  out.method = Method::OptimizedLocal;
  out.best = -std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < starts; ++s) {
    ComplexMatrix origin = identity(objective.dim_a());
    if (s > 0) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      Rng rng(seq);
      origin = random_unitary(objective.dim_a(), rng);
    }
    auto center = std::make_shared<ComplexMatrix>(origin);

    LocalProblem problem;
    problem.objective = &objective;
    problem.to_basis = [center, m](const double* x) {
      return ComplexMatrix(*center * hermitian_exp_i(generator(x, m)));
    };
    problem.cap = per_start;
    const std::vector<double> zero(nparams, 0.0);
    restarted_search(problem, zero, 0.6, 0.15, options.rel_improvement,
                     [center, zero](LocalProblem& p) {
                       *center = p.best_basis;
                       return zero;
                     });
    out.evaluations += problem.used;
    if (problem.best > out.best) {
      out.best = problem.best;
      out.basis = problem.best_basis;
    }
  }
  return out;
}

}  // namespace

OptimizationOutcome maximize_over_measurements(const CompressedBlockObjective& objective,
                                               const OptimizerOptions& options) {
  const std::size_t m = objective.dim_a();
  if (m < 2 || m > kMaxOptimizedDimA) {
    fail(ErrorKind::UnsupportedDimension,
         fmt::format("measurement optimization supports dim_a in [2, {}], got {}",
                     kMaxOptimizedDimA, m));
  }
  if (options.strategy == Strategy::Grid && m != 2) {
    fail(ErrorKind::UnsupportedDimension,
         fmt::format("grid strategy is defined for dim_a = 2, got {}", m));
  }
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;

  const std::size_t budget = default_budget(options, m);
  switch (options.strategy) {
    case Strategy::Grid:
      return qubit_grid(objective, options, budget, false);
    case Strategy::Hybrid:
      if (m == 2) return qubit_grid(objective, options, budget, true);
      return multistart(objective, options, budget);
    case Strategy::MultistartLocal:
      return multistart(objective, options, budget);
  }
  return multistart(objective, options, budget);
}

}  // namespace affdiscord
