#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psmaca::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kDataError = 2,
    kInternalError = 3,
};

/// Runs one command. args excludes the program name. Diagnostics go to err
/// as a single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psmaca::cli
