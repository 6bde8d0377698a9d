// affdiscord: affinity-based geometric discord from the command line.
//
//   affdiscord compute --state rho.json [--measure all] [--method auto]
//   affdiscord sweep --family werner2 --from -0.3333 --to 1 --steps 41
//   affdiscord verify [--seed 7] [--tol-optimizer 1e-12]
//   affdiscord state --family werner --m 3 --param 0.9 --out w.json
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 unsupported.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "affdiscord/correlation.hpp"
#include "affdiscord/errors.hpp"
#include "affdiscord/families.hpp"
#include "affdiscord/measures.hpp"
#include "affdiscord/state_io.hpp"
#include "affdiscord/states.hpp"
#include "affdiscord/verify.hpp"

namespace {

using namespace affdiscord;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;

struct RunConfig {
  std::string state_path;
  std::string measure = "affinity";
  std::string sweep_measure = "all";
  std::string method = "auto";
  std::string strategy = "hybrid";
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  std::string family;
  std::size_t m = 3;
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 11;
  std::vector<double> params;
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::size_t rank = 0;
  std::string out;
  std::string format;
  Tolerances tol;
  std::optional<double> optimizer_check_tol;
  std::vector<int> only;
};

class UnsupportedRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Strategy parse_strategy(const std::string& s) {
  if (s == "grid") return Strategy::Grid;
  if (s == "multistart") return Strategy::MultistartLocal;
  return Strategy::Hybrid;
}

OptimizerOptions optimizer_options(const RunConfig& cfg) {
  OptimizerOptions o;
  o.strategy = parse_strategy(cfg.strategy);
  o.budget = cfg.budget;
  o.seed = cfg.seed;
  o.rel_improvement = cfg.tol.optimizer_rel_improvement;
  return o;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json measurement_json(const DiscordResult& r) {
  json out = json::object();
  if (r.measurement) {
    json basis = json::array();
    const ComplexMatrix& v = r.measurement->vectors();
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      json vec = json::array();
      for (Eigen::Index i = 0; i < v.rows(); ++i) vec.push_back(complex_json(v(i, k)));
      basis.push_back(std::move(vec));
    }
    out["basis"] = std::move(basis);
  } else {
    out["basis"] = nullptr;
  }
  out["parameters"] = r.parameters;
  return out;
}

std::vector<double> descending(const RealVector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> spectrum_of(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return descending(solver.eigenvalues());
}

// Rank-1 states are detected from the spectrum and returned as amplitudes.
std::optional<PureState> as_pure(const BipartiteState& state) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(state.rho());
  const auto last = solver.eigenvalues().size() - 1;
  if (solver.eigenvalues()[last] < 1.0 - 1e-10) return std::nullopt;
  return PureState::normalized(state.dim_a(), state.dim_b(), solver.eigenvectors().col(last));
}

DiscordResult compute_measure(const BipartiteState& state, Measure measure, const RunConfig& cfg,
                              const std::optional<PureState>& pure) {
  const OptimizerOptions options = optimizer_options(cfg);
  auto optimized = [&] {
    switch (measure) {
      case Measure::Affinity: return optimize_affinity_discord(state, options, cfg.tol);
      case Measure::HilbertSchmidt: return optimize_hs_discord(state, options);
      case Measure::Remedied: return optimize_remedied_hs_discord(state, options, cfg.tol);
    }
    return optimize_affinity_discord(state, options, cfg.tol);
  };
  // The 2 x n closed form computes 1 - ||Pi(sqrt rho)||^2 at its optimum,
  // which is both the affinity and the remedied discord.
  const bool closed_2xn_applies = state.dim_a() == 2 && measure != Measure::HilbertSchmidt;

  if (cfg.method == "optimize") return optimized();
  if (cfg.method == "bound") {
    if (measure != Measure::Affinity) {
      throw UnsupportedRequest("the spectral lower bound is defined for the affinity discord");
    }
    DiscordResult r;
    r.value = lower_bound(state, cfg.tol);
    r.method = Method::Bound;
    r.evaluations = 1;
    return r;
  }
  // On qubit A the 2 x n closed form also covers pure states.
  if (closed_2xn_applies) return closed_form_2xn(state, cfg.tol);
  if (pure) return pure_discord(*pure);
  if (cfg.method == "closed") {
    throw UnsupportedRequest(fmt::format("no closed form for measure '{}' on a {}x{} mixed state",
                                         to_string(measure), state.dim_a(), state.dim_b()));
  }
  return optimized();
}

std::vector<Measure> requested_measures(const std::string& name, bool sweep) {
  if (name == "all") {
    if (sweep) return {Measure::Affinity, Measure::HilbertSchmidt};
    return {Measure::Affinity, Measure::HilbertSchmidt, Measure::Remedied};
  }
  return {parse_measure(name)};
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) fail(ErrorKind::ParseError, fmt::format("cannot write '{}'", cfg.out));
  file << text;
}

int cmd_compute(const RunConfig& cfg) {
  const BipartiteState state = read_state_file(cfg.state_path, cfg.tol);
  const std::optional<PureState> pure = as_pure(state);
  const std::vector<Measure> measures = requested_measures(cfg.measure, false);

  json results = json::object();
  std::vector<std::pair<Measure, DiscordResult>> computed;
  for (Measure measure : measures) {
    computed.emplace_back(measure, compute_measure(state, measure, cfg, pure));
  }

  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "measure,value,method,evaluations\n";
    for (const auto& [measure, r] : computed) {
      out << fmt::format("{},{:.12g},{},{}\n", to_string(measure), r.value, to_string(r.method),
                         r.evaluations);
    }
    emit(cfg, out.str());
    return kExitOk;
  }

  const DiscordResult& primary = computed.front().second;
  json report;
  report["measure"] = std::string(to_string(computed.front().first));
  report["value"] = primary.value;
  report["method"] = std::string(to_string(primary.method));
  report["bound"] = lower_bound(state, cfg.tol);
  report["bound_clamped"] = lower_bound_clamped(state, cfg.tol);
  report["optimal_measurement"] = measurement_json(primary);
  report["evaluations"] = primary.evaluations;
  if (computed.size() > 1) {
    json all = json::object();
    for (const auto& [measure, r] : computed) {
      all[std::string(to_string(measure))] = json{{"value", r.value},
                                                  {"method", std::string(to_string(r.method))},
                                                  {"optimal_measurement", measurement_json(r)},
                                                  {"evaluations", r.evaluations}};
    }
    report["measures"] = std::move(all);
  }
  json diagnostics;
  diagnostics["dim_a"] = state.dim_a();
  diagnostics["dim_b"] = state.dim_b();
  diagnostics["purity"] = state.purity();
  diagnostics["marginal_spectrum_a"] = spectrum_of(state.marginal(Subsystem::A));
  diagnostics["marginal_spectrum_b"] = spectrum_of(state.marginal(Subsystem::B));
  if (pure) {
    diagnostics["schmidt_spectrum"] = schmidt_spectrum(*pure).coefficients;
  }
  report["diagnostics"] = std::move(diagnostics);
  report["seed"] = cfg.seed;
  emit(cfg, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  SweepSpec spec;
  spec.family = parse_family(cfg.family);
  spec.m = cfg.m;
  spec.measures = requested_measures(cfg.sweep_measure, true);
  spec.options = optimizer_options(cfg);
  if (spec.family == Family::BellDiagonal) {
    if (cfg.steps == 0) fail(ErrorKind::OutOfRange, "steps must be positive");
    spec.triples = random_bell_triples(cfg.steps, cfg.seed);
  } else {
    spec.params = linspace(cfg.from, cfg.to, cfg.steps);
  }
  const std::vector<SweepRow> rows = sweep(spec);

  std::ostringstream out;
  if (cfg.format == "json") {
    json list = json::array();
    for (const SweepRow& row : rows) {
      list.push_back(json{{"family", std::string(to_string(row.family))},
                          {"param", row.param},
                          {"measure", std::string(to_string(row.measure))},
                          {"analytic", row.analytic},
                          {"optimized", row.optimized},
                          {"gap", row.gap}});
    }
    out << list.dump(2) << "\n";
  } else {
    write_sweep_csv(out, rows);
  }
  emit(cfg, out.str());
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions options;
  options.seed = cfg.seed;
  options.optimizer_tolerance = cfg.optimizer_check_tol;
  options.only = cfg.only;
  const auto results = run_acceptance(options);
  std::ostringstream out;
  bool ok = true;
  for (const CheckResult& check : results) {
    write_check_json(out, check);
    ok = ok && check.passed();
  }
  emit(cfg, out.str());
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_state(const RunConfig& cfg) {
  auto param = [&](std::size_t i) {
    if (cfg.params.size() <= i) fail(ErrorKind::OutOfRange, "missing --param value");
    return cfg.params[i];
  };
  std::optional<BipartiteState> state;
  if (cfg.family == "werner2") {
    state = werner_two_qubit(param(0));
  } else if (cfg.family == "werner") {
    state = werner_general(cfg.m, param(0));
  } else if (cfg.family == "isotropic") {
    state = isotropic(cfg.m, param(0));
  } else if (cfg.family == "belldiag") {
    state = bell_diagonal(param(0), param(1), param(2));
  } else if (cfg.family == "random") {
    const std::size_t rank = cfg.rank == 0 ? cfg.dim_a * cfg.dim_b : cfg.rank;
    state = random_state(cfg.dim_a, cfg.dim_b, rank, cfg.seed);
  } else {
    fail(ErrorKind::UnknownFamily, fmt::format("unknown state family '{}'", cfg.family));
  }
  std::ostringstream out;
  write_state(out, *state);
  emit(cfg, out.str());
  return kExitOk;
}

void add_tolerance_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol-hermitian", cfg.tol.hermitian, "Eigensolver Hermiticity tolerance");
  cmd->add_option("--tol-state-hermitian", cfg.tol.state_hermitian,
                  "Density-matrix Hermiticity tolerance");
  cmd->add_option("--tol-trace", cfg.tol.trace, "Unit-trace tolerance");
  cmd->add_option("--tol-psd", cfg.tol.psd, "Negative-eigenvalue clamp threshold");
  cmd->add_option("--tol-imag", cfg.tol.imag_residue, "Correlation-matrix imaginary residue");
  cmd->add_option("--tol-bloch", cfg.tol.bloch, "Bell-diagonal eigenvalue slack");
  cmd->add_option("--tol-radicand", cfg.tol.radicand, "Analytic-formula radicand clamp");
  cmd->add_option("--tol-rel-improvement", cfg.tol.optimizer_rel_improvement,
                  "Optimizer restart stopping threshold");
}

void add_optimizer_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--strategy", cfg.strategy, "grid | multistart | hybrid")
      ->check(CLI::IsMember({"grid", "multistart", "hybrid"}));
  cmd->add_option("--budget", cfg.budget, "Functional evaluations (0 = default)");
  cmd->add_option("--seed", cfg.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affinity-based geometric discord of bipartite states"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* compute = app.add_subcommand("compute", "Discord of a state read from a JSON file");
  compute->add_option("--state", cfg.state_path, "State file")->required();
  compute->add_option("--measure", cfg.measure, "affinity | hs | remedied | all")
      ->check(CLI::IsMember({"affinity", "hs", "remedied", "all"}));
  compute->add_option("--method", cfg.method, "auto | closed | bound | optimize")
      ->check(CLI::IsMember({"auto", "closed", "bound", "optimize"}));
  compute->add_option("--out", cfg.out, "Output path (default stdout)");
  compute->add_option("--format", cfg.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_optimizer_flags(compute, cfg);
  add_tolerance_flags(compute, cfg);

  auto* sweep_cmd = app.add_subcommand("sweep", "Analytic vs optimized discord over a family");
  sweep_cmd->add_option("--family", cfg.family, "werner2 | belldiag | werner | isotropic")
      ->required();
  sweep_cmd->add_option("--m", cfg.m, "Local dimension for werner / isotropic");
  sweep_cmd->add_option("--from", cfg.from, "First grid value");
  sweep_cmd->add_option("--to", cfg.to, "Last grid value");
  sweep_cmd->add_option("--steps", cfg.steps, "Grid points (random triples for belldiag)");
  sweep_cmd->add_option("--measure", cfg.sweep_measure, "affinity | hs | remedied | all")
      ->check(CLI::IsMember({"affinity", "hs", "remedied", "all"}));
  sweep_cmd->add_option("--out", cfg.out, "Output path (default stdout)");
  sweep_cmd->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"json", "csv"}));
  add_optimizer_flags(sweep_cmd, cfg);
  add_tolerance_flags(sweep_cmd, cfg);

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
  verify->add_option("--seed", cfg.seed, "Master seed");
  verify->add_option("--tol-optimizer", cfg.optimizer_check_tol,
                     "Override every optimizer-result tolerance");
  verify->add_option("--only", cfg.only, "Run only these check ids")->delimiter(',');
  verify->add_option("--out", cfg.out, "Output path (default stdout)");

  auto* state_cmd = app.add_subcommand("state", "Write a named-family state file");
  state_cmd->add_option("--family", cfg.family, "werner2 | werner | isotropic | belldiag | random")
      ->required();
  state_cmd->add_option("--m", cfg.m, "Local dimension for werner / isotropic");
  state_cmd->add_option("--param", cfg.params, "Family parameter(s)")->delimiter(',');
  state_cmd->add_option("--dim-a", cfg.dim_a, "Random state: dimension of A");
  state_cmd->add_option("--dim-b", cfg.dim_b, "Random state: dimension of B");
  state_cmd->add_option("--rank", cfg.rank, "Random state: rank (0 = full)");
  state_cmd->add_option("--seed", cfg.seed, "Random seed");
  state_cmd->add_option("--out", cfg.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (compute->parsed()) return cmd_compute(cfg);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (state_cmd->parsed()) return cmd_state(cfg);
  } catch (const DiscordError& e) {
    const bool unsupported = e.kind() == ErrorKind::UnsupportedDimension ||
                             e.kind() == ErrorKind::WrongDimension;
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump()
              << "\n";
    return unsupported ? kExitUnsupported : kExitInvalid;
  } catch (const UnsupportedRequest& e) {
    std::cerr << json{{"error", "Unsupported"}, {"message", e.what()}}.dump() << "\n";
    return kExitUnsupported;
  }
  return kExitInvalid;
}
