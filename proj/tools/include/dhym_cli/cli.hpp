#pragma once

#include <ostream>

namespace dhym::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kSemistable = 2,
  kUnstable = 3,
  kResidualFailure = 4,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dhym::cli
