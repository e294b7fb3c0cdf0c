#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualrep::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kPass = 0, kInconsistent = 1, kInvalidInput = 2 };

/// Runs one subcommand. args excludes the program name. Reports go to the
/// --output file or to out; diagnostics and wall time go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace dualrep::cli
