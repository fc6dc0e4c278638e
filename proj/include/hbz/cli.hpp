#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hbz {

/// Exit codes: 0 success, 1 bad input or failure, 2 answered through the de Casteljau fallback.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDegraded = 2;

/// Runs the `hbz` command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hbz
