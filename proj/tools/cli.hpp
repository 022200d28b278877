#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vanetauth::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitProtocol = 2;

/// Environment variable holding the default seed.
inline constexpr const char* kSeedVariable = "VANETAUTH_SEED";

/// Runs one command line (args excludes the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vanetauth::cli
