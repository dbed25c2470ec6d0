#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trendvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line (arguments without the program name). Frames go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace trendvol::cli
