#pragma once

#include <iosfwd>

namespace stokesfilm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kSelftestFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalStop = 3;
inline constexpr int kIoError = 4;

/// Entry point of the stokesfilm tool: subcommands run, check, selftest.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Runs the quick invariant suite; one line per check. Returns true if all pass.
bool selftest(std::ostream& out, bool quiet);

}  // namespace stokesfilm::cli
