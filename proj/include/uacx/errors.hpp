#pragma once

#include <stdexcept>
#include <string>

namespace uacx {

// Base of all recoverable numeric failures. code() is the stable
// machine-readable name surfaced in the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Sampled lift is not strictly increasing.
struct NonMonotone : Error {
  explicit NonMonotone(const std::string& m) : Error("NonMonotone", m) {}
};

// Argument tracking around the circle does not close up to the degree.
struct WindingMismatch : Error {
  explicit WindingMismatch(const std::string& m) : Error("WindingMismatch", m) {}
};

// Root finding could not meet the requested residual.
struct NoConvergence : Error {
  explicit NoConvergence(const std::string& m) : Error("NoConvergence", m) {}
};

// A distortion-ratio denominator collapsed to zero (or changed sign).
struct DegenerateDenominator : Error {
  explicit DegenerateDenominator(const std::string& m)
      : Error("DegenerateDenominator", m) {}
};

// Adaptive integration failed to meet its tolerance.
struct QuadratureFailure : Error {
  explicit QuadratureFailure(const std::string& m)
      : Error("QuadratureFailure", m) {}
};

// A quantity left its mathematically guaranteed range.
struct InvariantBreach : Error {
  explicit InvariantBreach(const std::string& m) : Error("InvariantBreach", m) {}
};

// Grid values out of order (construction or reload).
struct MonotonicityViolation : Error {
  explicit MonotonicityViolation(const std::string& m)
      : Error("MonotonicityViolation", m) {}
};

// Evaluation requested below the resolution floor of a grid-backed subject.
struct FloorViolation : Error {
  explicit FloorViolation(const std::string& m) : Error("FloorViolation", m) {}
};

}  // namespace uacx
