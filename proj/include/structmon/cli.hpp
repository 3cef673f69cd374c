#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace structmon {

/// Runs the command line `args` (without the program name). Returns 0 on
/// success, 1 when a check fails or words are unequal, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace structmon
