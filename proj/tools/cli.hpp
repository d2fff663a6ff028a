#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace irrvir::cli {

/// Runs one command line (without the program name). Exit status: 0 when every
/// residual vanishes, 1 on a residual failure or solver error, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irrvir::cli
