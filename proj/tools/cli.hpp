#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace guibench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point behind the `guibench` binary. `args` excludes the program
// name. Results go to `out` (or files), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace guibench::cli
