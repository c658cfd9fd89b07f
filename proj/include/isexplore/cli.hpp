#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isexplore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArguments = 2;
inline constexpr int kExitTrackError = 3;
inline constexpr int kExitSelectionError = 4;

// Entry point shared by the executable and the tests. args[0] is the program
// name. Diagnostics go to `err` as a single "error: ..." line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isexplore::cli
