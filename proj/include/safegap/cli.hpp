#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace safegap {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

// Entry point behind the `safegap` executable. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace safegap
