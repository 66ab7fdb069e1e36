#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fsmlock {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitInfeasible = 3,
    kExitVerification = 4,
};

/// Entry point of the `fsmlock` command; `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fsmlock
