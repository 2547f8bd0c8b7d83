#pragma once

#include <stdexcept>
#include <string>

namespace swimopt {

/// @brief Invalid user input (shape, resolution, options).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Shape evaluates to a non-positive radius or degenerate surface.
class ShapeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// @brief Linear solve failed; carries the last relative residual.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// @brief Discrete operator lost definiteness (signals under-resolution).
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// @brief Requested mode does not match the detected shape symmetry.
class ModeMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swimopt
