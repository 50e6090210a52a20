#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxcat::cli {

/// Exit-code contract: 0 success / verification pass, 1 verification
/// failure, 2 input or usage error.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Full command-line front end as a library call, so tests never shell
/// out. `args` excludes the program name. Output and diagnostics go to
/// the supplied streams; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fluxcat::cli
