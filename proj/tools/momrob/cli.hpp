#ifndef MOMROB_TOOLS_CLI_HPP_
#define MOMROB_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace momrob::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momrob::cli

#endif  // MOMROB_TOOLS_CLI_HPP_
