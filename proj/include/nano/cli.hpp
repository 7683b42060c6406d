#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nano {

/// Command-line driver, runnable in-process. args excludes the program
/// name. Returns the process exit code:
///   0  success
///   1  unreadable input or a lexical, syntactic or resolution error
///   2  the model is over- or underdetermined
///   3  no constraint-satisfying completion exists
///   4  the simulation raised a runtime error
///   64 the command line itself is malformed
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nano
