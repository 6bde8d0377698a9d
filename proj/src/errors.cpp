#include "affdiscord/errors.hpp"

namespace affdiscord {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotUnitTrace: return "NotUnitTrace";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidBlochVector: return "InvalidBlochVector";
    case ErrorKind::InvalidProbabilities: return "InvalidProbabilities";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw DiscordError(kind, message);
}

}  // namespace affdiscord
