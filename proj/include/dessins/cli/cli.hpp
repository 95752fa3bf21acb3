#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dessins::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    usage = 2,
    resource = 3,
    io = 4,
};

/// Runs one command line (without the program name) and returns its exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dessins::cli
