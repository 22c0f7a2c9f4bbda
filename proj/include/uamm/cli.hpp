#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uamm::cli {

inline constexpr int kExitOk      = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage   = 2;

// Entry point of the uamm tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uamm::cli
