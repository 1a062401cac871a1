#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractalmsg::cli {

enum ExitCode : int {
    kSuccess = 0,
    kSelfCheckFailed = 1,
    kInvalidParameters = 2,
    kIoFailure = 3,
    kInfeasible = 4,
};

// Runs one subcommand. args excludes the program name. The one-line JSON
// summary goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fractalmsg::cli
