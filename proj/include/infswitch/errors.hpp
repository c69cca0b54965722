#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infswitch {

/// Bad argument shape or value (dimension mismatch, empty record, ...).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A pair distance collapsed below the guard radius.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested operation is outside what the implementation supports.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Statistically degenerate input (all-zero weights, zero proportions).
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A density vanished where the reference measure has mass.
struct ZeroDensityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Configuration file / key errors.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integrator blow-up; carries the step index at which it happened.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, std::uint64_t step_index)
      : std::runtime_error(what + " (step " + std::to_string(step_index) + ")"),
        step(step_index) {}
  explicit IntegrationError(const std::string& what)
      : std::runtime_error(what), step(0) {}
  std::uint64_t step;
};

}  // namespace infswitch
