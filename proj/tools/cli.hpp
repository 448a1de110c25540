#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qrl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

/// Runs one command; args excludes the program name.  JSON goes to out,
/// diagnostics to err.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrl::cli
