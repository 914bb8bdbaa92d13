#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wavecast::cli {

/// Exit codes: 0 success, 1 runtime or data error, 2 usage or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line in-process; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace wavecast::cli
