#pragma once

#include <iosfwd>
#include <string>

#include "affdiscord/states.hpp"

namespace affdiscord {

// JSON state file:
//   {"dim_a": m, "dim_b": n, "matrix": [[{"re": r, "im": i}, ...], ...]}
// Rows are stored in order; the reader runs BipartiteState::validate.

BipartiteState read_state(std::istream& in, const Tolerances& tol = {});
BipartiteState read_state_file(const std::string& path, const Tolerances& tol = {});

// Numbers are written with 17 significant digits.
void write_state(std::ostream& out, const BipartiteState& state);
void write_state_file(const std::string& path, const BipartiteState& state);

}  // namespace affdiscord
