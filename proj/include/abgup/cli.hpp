#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace abgup::cli {

/// Exit codes of `run`.
enum ExitCode : int { kOk = 0, kValidation = 1, kAccuracy = 2 };

/// Runs one subcommand. `args` excludes the program name. Data goes to
/// `--out` when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace abgup::cli
