#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsetlin::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kDataError = 3,
    kConfigError = 4,
};

/// Environment variable supplying the default --seed.
inline constexpr const char *kSeedEnv = "TSETLIN_SEED";

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace tsetlin::cli
