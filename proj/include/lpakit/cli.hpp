#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpakit {

// Dispatches one command line (without the program name).  Returns the exit
// code contract: 0 success, 1 parse or validation error, 2 unsupported graph
// class, 3 bounded search inconclusive.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lpakit
