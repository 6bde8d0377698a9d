#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affdiscord {

enum class ErrorKind {
  NonSquare,
  NonHermitian,
  NotPSD,
  NotUnitTrace,
  NotNormalized,
  DimensionMismatch,
  InvalidBlochVector,
  InvalidProbabilities,
  OutOfRange,
  WrongDimension,
  UnsupportedDimension,
  UnknownFamily,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind so the
// CLI can map it to an exit code and a stable reason string.
class DiscordError : public std::runtime_error {
 public:
  DiscordError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace affdiscord
