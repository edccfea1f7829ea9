#pragma once

#include <ostream>

namespace kcf::cli {

enum ExitCode : int {
    Ok = 0,
    Usage = 1,
    InputError = 2,
    UnrepresentableEigenvalue = 3,
    NotUniqueWithoutConstants = 4,
    VerifyFailed = 5,
};

/// Entry point of the `kcf` tool: subcommands analyze, solve, eval, verify, generate.
/// Reports go to `out`, diagnostics to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kcf::cli
