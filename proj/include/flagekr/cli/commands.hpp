#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flagekr::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_resource = 3,
    exit_consistency = 4,
};

/// Runs one command line (without the program name); returns the exit code.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

}
