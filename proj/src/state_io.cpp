#include "affdiscord/state_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "affdiscord/errors.hpp"

namespace affdiscord {

namespace {

using nlohmann::json;

std::size_t read_dim(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) {
    fail(ErrorKind::ParseError, fmt::format("missing or non-positive integer field '{}'", key));
  }
  return doc[key].get<std::size_t>();
}

Complex read_entry(const json& e) {
  if (!e.is_object() || !e.contains("re") || !e.contains("im") || !e["re"].is_number() ||
      !e["im"].is_number()) {
    fail(ErrorKind::ParseError, "matrix entries must be {\"re\": number, \"im\": number}");
  }
  return {e["re"].get<double>(), e["im"].get<double>()};
}

}  // namespace

BipartiteState read_state(std::istream& in, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::ParseError, "state file must hold a JSON object");
  const std::size_t dim_a = read_dim(doc, "dim_a");
  const std::size_t dim_b = read_dim(doc, "dim_b");
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) {
    fail(ErrorKind::ParseError, "missing 'matrix' array");
  }
  const json& rows = doc["matrix"];
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(ErrorKind::DimensionMismatch, fmt::format("row {} is not of length {}", i, n));
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = read_entry(row[static_cast<std::size_t>(j)]);
  }
  return BipartiteState::validate(m, dim_a, dim_b, tol);
}

BipartiteState read_state_file(const std::string& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, fmt::format("cannot open '{}'", path));
  return read_state(in, tol);
}

void write_state(std::ostream& out, const BipartiteState& state) {
  const ComplexMatrix& rho = state.rho();
  out << fmt::format("{{\"dim_a\": {}, \"dim_b\": {}, \"matrix\": [\n", state.dim_a(),
                     state.dim_b());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    out << "  [";
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (j > 0) out << ", ";
      out << fmt::format("{{\"re\": {:.17g}, \"im\": {:.17g}}}", rho(i, j).real(),
                         rho(i, j).imag());
    }
    out << (i + 1 < rho.rows() ? "],\n" : "]\n");
  }
  out << "]}\n";
}

void write_state_file(const std::string& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, fmt::format("cannot write '{}'", path));
  write_state(out, state);
}

}  // namespace affdiscord
