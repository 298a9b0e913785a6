#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wtah {

/// Runs the command line `args` (without the program name). Exit codes: 0 ok or
/// positive verdict, 1 input or validation error, 2 witness or negative verdict,
/// 3 unknown.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wtah
