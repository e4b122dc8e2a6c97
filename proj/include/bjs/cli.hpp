#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bjs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitVerifyMismatch = 3;

// Runs one command. `args` excludes the program name. Payloads go to `out`
// (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bjs::cli
