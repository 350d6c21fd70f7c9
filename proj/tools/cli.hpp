#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace defosc {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or to --out), diagnostics to `err` as single-line JSON.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace defosc
