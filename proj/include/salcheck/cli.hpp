#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace salcheck {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 pass, 1 counterexample or anomaly, 2 usage or configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace salcheck
