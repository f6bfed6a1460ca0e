#pragma once
#include <stdexcept>
#include <string>

namespace ftr {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration / invalid argument combinations (CLI exit code 2).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Numeric degeneracy: coincident roots, vanishing h_1, ...  (CLI exit code 3).
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

// Series/table truncation order too small for the requested operation.
struct OrderError : Error {
  explicit OrderError(const std::string& msg) : Error(msg) {}
};

// Series arithmetic precondition failures ("non-unit divisor", bad reversion input, ...).
struct SeriesError : Error {
  explicit SeriesError(const std::string& msg) : Error(msg) {}
};

// Brute-force enumeration size guard.
struct OracleBoundError : Error {
  explicit OracleBoundError(const std::string& msg) : Error(msg) {}
};

}  // namespace ftr
