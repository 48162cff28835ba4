#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace putvar::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kInfeasible = 3,
    kSolverFailure = 4,
    kIoError = 5,
};

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnv = "PUTVAR_CONFIG";

/// Runs one command line (argv[0] is the program name). Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace putvar::cli
