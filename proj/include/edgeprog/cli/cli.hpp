#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace edgeprog::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUserError = 1;
inline constexpr int kInternalError = 2;

// Runs one `edgeprog` command. `args` excludes the program name. Normal
// output goes to `out`, diagnostics and notices to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edgeprog::cli
