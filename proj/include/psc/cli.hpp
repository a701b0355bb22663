#pragma once

#include <ostream>

namespace psc {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kMismatch = 3 };

/// Command-line entry point; writes results to `out` and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psc
