#pragma once

#include <string>

#include <doctest.h>

#include "affdiscord/errors.hpp"
#include "affdiscord/linalg.hpp"

namespace testing {

inline double distance(const affdiscord::ComplexMatrix& a, const affdiscord::ComplexMatrix& b) {
  return affdiscord::max_abs(a - b);
}

}  // namespace testing

// Asserts that `expr` throws DiscordError with the given kind.
#define CHECK_FAILS_WITH(expr, expected_kind)                            \
  do {                                                                   \
    bool thrown_ = false;                                                \
    try {                                                                \
      (void)(expr);                                                      \
    } catch (const affdiscord::DiscordError& e_) {                       \
      thrown_ = true;                                                    \
      CHECK_EQ(std::string(affdiscord::to_string(e_.kind())),            \
               std::string(affdiscord::to_string(expected_kind)));       \
    }                                                                    \
    CHECK_MESSAGE(thrown_, "expected DiscordError from " #expr);         \
  } while (0)
