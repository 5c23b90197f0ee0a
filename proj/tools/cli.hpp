#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdptw::cli {

enum ExitCode : int {
    kOk = 0,
    kInfeasible = 1,
    kUsage = 2,
    kRefused = 3,
};

/// Runs one `pdptw` invocation; `args` excludes the program name.
auto run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) -> int;

} // namespace pdptw::cli
