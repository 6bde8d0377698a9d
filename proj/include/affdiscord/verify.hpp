#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace affdiscord {

struct Measurement {
  std::string label;
  double measured = 0.0;  // worst observed gap
  double tolerance = 0.0;
  bool passed = false;
};

struct RuntimeLimit {
  double limit_seconds = 0.0;
  bool passed = true;
};

struct CheckResult {
  int id = 0;
  std::string name;
  std::vector<Measurement> measurements;
  std::optional<RuntimeLimit> runtime;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  // Replaces every tolerance that applies to an optimizer result.
  std::optional<double> optimizer_tolerance;
  // Restrict to a subset of checks (ids 1..10); empty runs all.
  std::vector<int> only;
};

std::vector<CheckResult> run_acceptance(const VerifyOptions& options = {});

/// One JSON object per line; contains no timings so reports are reproducible.
void write_check_json(std::ostream& out, const CheckResult& check);

}  // namespace affdiscord
