#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scorestab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out` (or --output), errors to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scorestab::cli
