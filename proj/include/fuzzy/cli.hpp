#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fuzzy {

// Runs one command line (args[0] is the program name) and returns the exit
// status: 0 ok, 1 semantic failure, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzy
