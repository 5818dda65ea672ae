// app.hpp: argument parsing and dispatch, separated from main() for testing.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace randbath::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNonConvergence = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randbath::cli
