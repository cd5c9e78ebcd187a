#include "dhym/error.hpp"

namespace dhym {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::DegenerateBundle: return "degenerate bundle class";
    case ErrorKind::DegeneratePhase: return "degenerate phase";
    case ErrorKind::NoSolution: return "no solution";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::DegenerateLimit: return "degenerate limit";
    case ErrorKind::SingularSystem: return "singular system";
    case ErrorKind::IntegrationFailure: return "integration failure";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::PositivityViolation: return "positivity violation";
    case ErrorKind::Consistency: return "consistency";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, double value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      value_(value) {}

}  // namespace dhym
