#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dhym {

enum class ErrorKind {
  Validation,
  DegenerateBundle,
  DegeneratePhase,
  NoSolution,
  Domain,
  Pole,
  DegenerateLimit,
  SingularSystem,
  IntegrationFailure,
  NonConvergence,
  PositivityViolation,
  Consistency,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library. `value()` carries the offending
// quantity when there is one (stability margin, location, estimate), else NaN.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        double value = std::numeric_limits<double>::quiet_NaN());

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace dhym
