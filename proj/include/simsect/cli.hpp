#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simsect::cli {

/// Runs the full command line (without argv[0]). Writes results to `out` and
/// diagnostics to `err`. Returns the process exit code:
///   0 success, 1 verification failure, 2 usage error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Parses a comma-separated list of decimals ("0.8,0.6").
std::vector<double> parse_direction(const std::string& text);

} // namespace simsect::cli
