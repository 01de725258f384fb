#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

/// Bad or inconsistent configuration values (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

/// Quadrature refinement levels failed to agree (CLI exit code 3).
/// Carries the best estimate achieved so callers can report it.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string &what, double achieved, double discrepancy)
      : std::runtime_error(what), achieved_estimate(achieved), discrepancy(discrepancy) {}

  double achieved_estimate;
  double discrepancy;
};

/// File output failure (CLI exit code 4).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace biphoton
