#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nadyn {

inline constexpr int kExitWnm = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitQueryDone = 2;
inline constexpr int kExitNoWnm = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nadyn
