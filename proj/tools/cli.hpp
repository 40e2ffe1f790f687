#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csas::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitResource = 4;

// Runs the csas-topo command line. args excludes the program name. Logs go to `log`, data
// summaries to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace csas::cli
