#pragma once

#include <stdexcept>
#include <string>

namespace anisolab {

/// Invalid grid, mask, coefficient or study configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A declared property (ellipticity, a spectral bound, ...) failed to hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear or nonlinear solve did not reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  /// Residual (or last increment, for fixed-point iterations) at failure.
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Field or report file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anisolab
