#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperlevy::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kPartialFailure = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

/// Runs one command line (without the program name). Human-readable output
/// goes to `out`, diagnostics to `err`; files land in the output directory
/// (--out, else $HYPERLEVY_OUTPUT_DIR, else the working directory).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlevy::cli
