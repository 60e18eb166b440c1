#pragma once

#include <iosfwd>

namespace julienne::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,  // infeasible bound or inconsistent transfer plan
  kInputError = 2,
};

/// Runs one command line. `in` backs the `-` (stdin) application file.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace julienne::cli
