#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vsp {

/// Runs the command line tool on `args` (without the program name).
/// Returns 0 on success, 1 on a semantic error and 2 on malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vsp
