#include "affdiscord/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "affdiscord/correlation.hpp"
#include "affdiscord/families.hpp"
#include "affdiscord/measures.hpp"
#include "affdiscord/states.hpp"

namespace affdiscord {

bool CheckResult::passed() const {
  const bool all = std::all_of(measurements.begin(), measurements.end(),
                               [](const Measurement& m) { return m.passed; });
  return all && (!runtime || runtime->passed);
}

namespace {

// Accumulates the worst gap seen for one labelled comparison.
class Gap {
 public:
  Gap(std::string label, double tolerance) : label_(std::move(label)), tolerance_(tolerance) {}

  void observe(double gap) {
    if (std::isnan(gap)) nan_ = true;
    worst_ = std::max(worst_, gap);
  }

  Measurement finish() const {
    return {label_, nan_ ? std::nan("") : worst_, tolerance_, !nan_ && worst_ <= tolerance_};
  }

 private:
  std::string label_;
  double tolerance_;
  double worst_ = 0.0;
  bool nan_ = false;
};

class Context {
 public:
  explicit Context(const VerifyOptions& options) : options_(options) {}

  double optimizer_tol(double nominal) const {
    return options_.optimizer_tolerance.value_or(nominal);
  }

  Rng rng(int check, std::uint32_t stream = 0) const {
    std::seed_seq seq{static_cast<std::uint32_t>(options_.seed),
                      static_cast<std::uint32_t>(options_.seed >> 32),
                      static_cast<std::uint32_t>(check), stream};
    return Rng(seq);
  }

  OptimizerOptions optimizer(int check, std::uint64_t salt = 0) const {
    OptimizerOptions o;
    o.seed = options_.seed * 1000003ULL + static_cast<std::uint64_t>(check) * 7919ULL + salt;
    return o;
  }

 private:
  VerifyOptions options_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

CheckResult check_werner_curves(const Context& ctx) {
  const auto start = Clock::now();
  CheckResult r{1, "werner2_affinity_and_hs_curves", {}, {}};
  Gap aff("affinity_optimized_vs_formula", ctx.optimizer_tol(1e-5));
  Gap hs("hs_optimized_vs_formula", ctx.optimizer_tol(1e-5));
  Gap bd("belldiag_formula_vs_werner_formula", 1e-9);
  Gap ends("endpoint_values_analytic", 1e-9);
  Gap ends_opt("endpoint_values_optimized", ctx.optimizer_tol(1e-5));

  const auto options = ctx.optimizer(1);
  for (double p : linspace(-1.0 / 3.0, 1.0, 41)) {
    const BipartiteState state = werner_two_qubit(p);
    const FamilyDiscords analytic = werner_two_qubit_discords(p);
    aff.observe(std::abs(optimize_affinity_discord(state, options).value - analytic.affinity));
    hs.observe(std::abs(optimize_hs_discord(state, options).value - analytic.hs));
    bd.observe(std::abs(bell_diagonal_discord(-p, -p, -p) - analytic.affinity));
  }
  for (auto [p, expected] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.5}}) {
    const FamilyDiscords analytic = werner_two_qubit_discords(p);
    ends.observe(std::abs(analytic.affinity - expected));
    ends.observe(std::abs(analytic.hs - expected));
    const BipartiteState state = werner_two_qubit(p);
    ends_opt.observe(std::abs(optimize_affinity_discord(state, options).value - expected));
    ends_opt.observe(std::abs(optimize_hs_discord(state, options).value - expected));
  }
  r.measurements = {aff.finish(), hs.finish(), bd.finish(), ends.finish(), ends_opt.finish()};
  r.runtime = RuntimeLimit{30.0, seconds_since(start) < 30.0};
  return r;
}

CheckResult check_pure_states(const Context& ctx) {
  CheckResult r{2, "pure_state_schmidt_formula", {}, {}};
  Gap opt("optimized_vs_schmidt_formula", ctx.optimizer_tol(1e-5));
  Gap closed("closed_2xn_vs_schmidt_formula", 1e-10);
  Gap maxent("maximally_entangled_optimized", ctx.optimizer_tol(1e-6));

  const std::array<std::pair<std::size_t, std::size_t>, 3> dims{{{2, 2}, {2, 3}, {3, 3}}};
  std::uint32_t stream = 0;
  for (auto [m, n] : dims) {
    Rng rng = ctx.rng(2, stream++);
    for (int i = 0; i < 30; ++i) {
      const PureState psi = random_pure_state(m, n, rng);
      const BipartiteState state = psi.density();
      const double oracle = pure_discord(psi).value;
      const auto options = ctx.optimizer(2, stream * 100 + static_cast<std::uint64_t>(i));
      opt.observe(std::abs(optimize_affinity_discord(state, options).value - oracle));
      if (m == 2) closed.observe(std::abs(closed_form_2xn(state).value - oracle));
    }
  }
  for (std::size_t m : {2u, 3u}) {
    const PureState psi(m, m, maximally_entangled_vector(m));
    const double expected = static_cast<double>(m - 1) / static_cast<double>(m);
    maxent.observe(
        std::abs(optimize_affinity_discord(psi.density(), ctx.optimizer(2, 9000 + m)).value -
                 expected));
  }
  r.measurements = {opt.finish(), closed.finish(), maxent.finish()};
  return r;
}

CheckResult check_closed_form_vs_optimizer(const Context& ctx) {
  CheckResult r{3, "closed_2xn_vs_grid_optimizer", {}, {}};
  Gap gap("closed_vs_optimized_two_qubit", ctx.optimizer_tol(1e-5));
  Rng rng = ctx.rng(3);
  for (int i = 0; i < 50; ++i) {
    const BipartiteState state = random_state(2, 2, 2 + static_cast<std::size_t>(i % 3), rng);
    const double closed = closed_form_2xn(state).value;
    const double optimized = optimize_affinity_discord(state, ctx.optimizer(3, i)).value;
    gap.observe(std::abs(closed - optimized));
  }
  r.measurements = {gap.finish()};
  return r;
}

CheckResult check_lower_bound(const Context& ctx) {
  CheckResult r{4, "lower_bound_dominance", {}, {}};
  Gap dominance("bound_minus_optimized", ctx.optimizer_tol(1e-6));
  Gap closed("bound_minus_closed_2xn", 1e-9);
  std::uint32_t stream = 0;
  for (std::size_t n : {2u, 3u}) {
    Rng rng = ctx.rng(4, stream++);
    for (int i = 0; i < 50; ++i) {
      const std::size_t rank = 1 + static_cast<std::size_t>(i) % (2 * n);
      const BipartiteState state = random_state(2, n, rank, rng);
      const double bound = lower_bound(state);
      const double optimized =
          optimize_affinity_discord(state, ctx.optimizer(4, n * 100 + i)).value;
      dominance.observe(bound - optimized);
      closed.observe(bound - closed_form_2xn(state).value);
    }
  }
  r.measurements = {dominance.finish(), closed.finish()};
  return r;
}

CheckResult check_ancilla(const Context& ctx) {
  CheckResult r{5, "ancilla_invariance_and_hs_scaling", {}, {}};
  Gap aff("affinity_after_minus_before", ctx.optimizer_tol(2e-5));
  Gap hs("hs_after_minus_purity_scaled_before", ctx.optimizer_tol(2e-5));

  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const std::array<ComplexMatrix, 3> ancillas{plus, diag2(0.5, 0.5), diag2(0.9, 0.1)};
  for (double p : {0.3, 0.7, 1.0}) {
    const BipartiteState state = werner_two_qubit(p);
    for (const ComplexMatrix& sigma : ancillas) {
      const AncillaReport rep = ancilla_behavior_report(state, sigma, ctx.optimizer(5));
      aff.observe(std::abs(rep.affinity_after - rep.affinity_before));
      hs.observe(std::abs(rep.hs_after - rep.hs_before * rep.purity_sigma));
    }
  }
  r.measurements = {aff.finish(), hs.finish()};
  return r;
}

CheckResult check_zero_discord(const Context& ctx) {
  CheckResult r{6, "zero_discord_classes", {}, {}};
  Gap cq("classical_quantum_optimized", ctx.optimizer_tol(1e-6));
  Gap prod("product_optimized", ctx.optimizer_tol(1e-6));
  Rng rng = ctx.rng(6);
  std::exponential_distribution<double> expo(1.0);
  const std::array<std::pair<std::size_t, std::size_t>, 3> dims{{{2, 2}, {2, 3}, {3, 2}}};
  for (int i = 0; i < 20; ++i) {
    auto [m, n] = dims[static_cast<std::size_t>(i) % dims.size()];
    std::vector<double> probs(m);
    for (double& p : probs) p = expo(rng);
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;
    std::vector<ComplexMatrix> conditional;
    for (std::size_t k = 0; k < m; ++k) {
      conditional.push_back(random_density(n, 1 + static_cast<std::size_t>(i) % n, rng));
    }
    // Rotate the classical register so the zero-discord basis is generic.
    const BipartiteState state = apply_local_unitaries(classical_quantum(probs, conditional),
                                                       random_unitary(m, rng), identity(n));
    cq.observe(optimize_affinity_discord(state, ctx.optimizer(6, i)).value);

    const BipartiteState product =
        product_state(random_density(m, m, rng), random_density(n, n, rng));
    prod.observe(optimize_affinity_discord(product, ctx.optimizer(6, 100 + i)).value);
  }
  r.measurements = {cq.finish(), prod.finish()};
  return r;
}

CheckResult check_local_unitary(const Context& ctx) {
  CheckResult r{7, "local_unitary_invariance", {}, {}};
  Gap closed("closed_2xn_change", 1e-9);
  Gap opt("optimized_change", ctx.optimizer_tol(2e-5));
  Rng rng = ctx.rng(7);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = i < 10 ? 2 : 3;
    const BipartiteState state = random_state(2, n, 1 + static_cast<std::size_t>(i) % (2 * n), rng);
    const BipartiteState rotated =
        apply_local_unitaries(state, random_unitary(2, rng), random_unitary(n, rng));
    closed.observe(std::abs(closed_form_2xn(rotated).value - closed_form_2xn(state).value));
    const auto options = ctx.optimizer(7, i);
    opt.observe(std::abs(optimize_affinity_discord(rotated, options).value -
                         optimize_affinity_discord(state, options).value));
  }
  r.measurements = {closed.finish(), opt.finish()};
  return r;
}

CheckResult check_family_limits(const Context&) {
  CheckResult r{8, "family_zeros_and_asymptotics", {}, {}};
  Gap zeros("analytic_zero_points", 1e-12);
  Gap zeros_state("constructed_state_zero_points", 1e-12);
  Gap werner("werner_m64_vs_limit", 0.05);
  Gap iso("isotropic_m64_vs_limit", 0.05);
  for (std::size_t m : {2u, 3u, 4u}) {
    const double md = static_cast<double>(m);
    const FamilyDiscords w = werner_general_discords(m, 1.0 / md);
    const FamilyDiscords s = isotropic_discords(m, 1.0 / (md * md));
    for (double v : {w.affinity, w.hs, s.affinity, s.hs}) zeros.observe(std::abs(v));
    const auto computational = MeasurementBasis::computational(m);
    zeros_state.observe(
        std::abs(affinity_discord_at(werner_general(m, 1.0 / md), computational)));
    zeros_state.observe(
        std::abs(affinity_discord_at(isotropic(m, 1.0 / (md * md)), computational)));
  }
  for (double x : {0.2, 0.5, 0.9}) {
    werner.observe(std::abs(werner_general_discords(64, x).affinity - werner_affinity_limit(x)));
    iso.observe(std::abs(isotropic_discords(64, x).affinity - isotropic_affinity_limit(x)));
  }
  r.measurements = {zeros.finish(), zeros_state.finish(), werner.finish(), iso.finish()};
  return r;
}

CheckResult check_qutrit_families(const Context& ctx) {
  const auto start = Clock::now();
  CheckResult r{9, "qutrit_family_multistart", {}, {}};
  Gap werner("werner_m3_optimized_vs_formula", ctx.optimizer_tol(1e-4));
  Gap iso("isotropic_m3_optimized_vs_formula", ctx.optimizer_tol(1e-4));
  int salt = 0;
  for (double x : {-0.8, -0.3, 0.2, 0.6, 0.95}) {
    const double value = optimize_affinity_discord(werner_general(3, x), ctx.optimizer(9, salt++)).value;
    werner.observe(std::abs(value - werner_general_discords(3, x).affinity));
  }
  for (double x : {0.05, 0.3, 0.5, 0.75, 1.0}) {
    const double value = optimize_affinity_discord(isotropic(3, x), ctx.optimizer(9, salt++)).value;
    iso.observe(std::abs(value - isotropic_discords(3, x).affinity));
  }
  r.measurements = {werner.finish(), iso.finish()};
  r.runtime = RuntimeLimit{300.0, seconds_since(start) < 300.0};
  return r;
}

CheckResult check_substrate(const Context& ctx) {
  CheckResult r{10, "numerical_substrate", {}, {}};
  Gap sqrt_residual("sqrt_squared_residual", 1e-9);
  Gap parseval("parseval_gamma", 1e-10);
  Gap symmetry("affinity_symmetry", 1e-12);
  Rng rng = ctx.rng(10);
  const std::array<std::pair<std::size_t, std::size_t>, 4> dims{{{2, 2}, {2, 3}, {3, 3}, {2, 4}}};
  for (auto [m, n] : dims) {
    std::vector<BipartiteState> ensemble;
    for (int i = 0; i < 10; ++i) {
      ensemble.push_back(random_state(m, n, 1 + static_cast<std::size_t>(i) % (m * n), rng));
    }
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      const BipartiteState& s = ensemble[i];
      const ComplexMatrix root = matrix_sqrt_psd(s.rho());
      sqrt_residual.observe(max_abs(root * root - s.rho()) / std::max(max_abs(s.rho()), 1e-300));
      parseval.observe(std::abs(correlation_matrix(s).gamma.squaredNorm() - 1.0));
      const BipartiteState& t = ensemble[(i + 1) % ensemble.size()];
      symmetry.observe(std::abs(affinity(s, t) - affinity(t, s)));
    }
  }
  r.measurements = {sqrt_residual.finish(), parseval.finish(), symmetry.finish()};
  return r;
}

}  // namespace

std::vector<CheckResult> run_acceptance(const VerifyOptions& options) {
  const Context ctx(options);
  const std::array<std::function<CheckResult(const Context&)>, 10> checks{
      check_werner_curves,  check_pure_states,    check_closed_form_vs_optimizer,
      check_lower_bound,    check_ancilla,        check_zero_discord,
      check_local_unitary,  check_family_limits,  check_qutrit_families,
      check_substrate,
  };
  std::vector<CheckResult> results;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    results.push_back(checks[i](ctx));
  }
  return results;
}

void write_check_json(std::ostream& out, const CheckResult& check) {
  nlohmann::ordered_json j;
  j["id"] = check.id;
  j["name"] = check.name;
  j["passed"] = check.passed();
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const Measurement& m : check.measurements) {
    nlohmann::ordered_json e;
    e["label"] = m.label;
    e["measured"] = m.measured;
    e["tolerance"] = m.tolerance;
    e["passed"] = m.passed;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  if (check.runtime) {
    j["runtime_limit_s"] = check.runtime->limit_seconds;
    j["runtime_passed"] = check.runtime->passed;
  }
  out << j.dump() << '\n';
}

}  // namespace affdiscord
