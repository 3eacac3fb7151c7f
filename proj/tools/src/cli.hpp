#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pkp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNothingFound = 1,
    kEscalatedWarning = 2,
    kInvalidParameters = 3,
    kResourceCap = 4,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkp::cli
