#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace emovec {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Parses and runs one command line (args excludes the program name).
// Returns the process exit code: 0 success, 1 usage error, 2 data or parse
// error, 3 numerical divergence. Output goes to the given streams so tests
// can drive commands in-process.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace emovec
