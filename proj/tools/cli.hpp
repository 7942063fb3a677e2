#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elkies::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDomain = 2,
    kBudget = 3,
    kVerificationFailed = 4,
};

/// Runs the command line in-process; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elkies::cli
